#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace localh;
using test_support::corpus;
using test_support::face;

namespace {

// x^α ∈ I_S iff some generator x^G (G a face, missing(G ∪ E) inside S) divides it
bool in_is_by_generators(const Triangulation& t, const LocalFrame& fr, VertexSet s, Face support) {
  bool found = false;
  support.for_each_subset([&](Face g) {
    if (found || !fr.link.contains(g)) return;
    const SimplexSet need = t.carrier(g | fr.e).complement(t.n());
    bool ok = true;
    for (int v : need.elements()) {
      const auto it = std::find(fr.missing.begin(), fr.missing.end(), v);
      if (it == fr.missing.end() || !s.contains(static_cast<int>(it - fr.missing.begin()))) ok = false;
    }
    found = ok;
  });
  return found;
}

std::vector<std::string> slice_labels(const Triangulation& t, const MonomialBasis& b, const IdealSlice& s) {
  std::vector<std::string> out;
  for (auto i : s.indices()) out.push_back(t.labels_of(b.monomials[i].support()).front());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("graded basis of the triforce face ring", "[face_ring]") {
  const auto t = corpus("triforce");
  const FaceRing<RationalField> ring(RationalField{}, t.complex(), 6);
  CHECK(ring.dim(0) == 1);
  CHECK(ring.dim(1) == 6);
  CHECK(ring.dim(2) == 15);
  CHECK(ring.basis(-1).size() == 0);
  // x^u x^v is a non-face and vanishes
  CHECK(ring.monomial(Monomial::of_face(face(t, {"u", "v"}), 6)).empty());
  CHECK_FALSE(ring.monomial(Monomial::of_face(face(t, {"a", "b", "c"}), 6)).empty());
}

TEST_CASE("basis size matches the face count formula", "[face_ring][property]") {
  for (const auto& name : corpus_names()) {
    const auto t = corpus(name);
    const FaceRing<PrimeField> ring(PrimeField(kDefaultPrime), t.complex(), t.vertex_labels().size());
    for (int m = 1; m <= 5; ++m) {
      std::int64_t expect = 0;
      for (Face f : t.complex().faces())
        if (!f.empty()) expect += binomial(m - 1, f.size() - 1);
      CHECK(static_cast<std::int64_t>(ring.dim(m)) == expect);
    }
  }
}

TEST_CASE("multiplication maps commute", "[face_ring][property]") {
  const auto t = corpus("triforce-starred-center");
  RationalField q;
  const FaceRing<RationalField> ring(q, t.complex(), t.vertex_labels().size());
  SeededRng rng(5);
  auto random_form = [&] {
    LinearForm<RationalField> th;
    for (std::size_t v = 0; v < t.vertex_labels().size(); ++v) th.coeffs.emplace_back(v, q.from_int(rng.nonzero(9)));
    return th;
  };
  for (int m = 0; m <= 3; ++m) {
    const auto a = random_form();
    const auto b = random_form();
    CHECK(ring.mult_map(a, m + 1) * ring.mult_map(b, m) == ring.mult_map(b, m + 1) * ring.mult_map(a, m));
  }
}

TEST_CASE("multiplication by a single variable", "[face_ring]") {
  const auto t = corpus("triforce");
  RationalField q;
  const FaceRing<RationalField> ring(q, t.complex(), 6);
  const int a = t.vertex_id("a");
  const LinearForm<RationalField> xa{{{static_cast<std::size_t>(a), q.one()}}};
  const auto m = ring.mult_map(xa, 1);
  CHECK(m.rows() == 15);
  CHECK(m.cols() == 6);
  // x^a times x^u is a non-face, times x^b is the edge ab
  const auto col_u = *ring.basis(1).find(Monomial::of_face(face(t, {"u"}), 6));
  const auto col_b = *ring.basis(1).find(Monomial::of_face(face(t, {"b"}), 6));
  const auto row_ab = *ring.basis(2).find(Monomial::of_face(face(t, {"a", "b"}), 6));
  for (std::size_t r = 0; r < m.rows(); ++r) CHECK(m.at(r, col_u) == 0);
  CHECK(m.at(row_ab, col_b) == 1);
  // images a^2, ab, ac, av, aw
  CHECK(rank(m) == 5);
}

TEST_CASE("degree-one pieces of the triforce ideals I_S", "[face_ring][ideal]") {
  const auto t = corpus("triforce");
  const auto fr = LocalFrame::of(t, Face{});
  const auto b1 = graded_basis(fr.link, 1, 6);
  using L = std::vector<std::string>;
  // forms 0,1,2 are tied to u,v,w
  CHECK(slice_labels(t, b1, ideal_slice_IS(t, fr, b1, VertexSet::of({0}))) == L{"a"});
  CHECK(slice_labels(t, b1, ideal_slice_IS(t, fr, b1, VertexSet::of({1}))) == L{"b"});
  CHECK(slice_labels(t, b1, ideal_slice_IS(t, fr, b1, VertexSet::of({2}))) == L{"c"});
  CHECK(slice_labels(t, b1, ideal_slice_IS(t, fr, b1, VertexSet::of({0, 1}))) == L{"a", "b", "w"});
  CHECK(slice_labels(t, b1, ideal_slice_IS(t, fr, b1, VertexSet::of({0, 2}))) == L{"a", "c", "v"});
  CHECK(slice_labels(t, b1, ideal_slice_IS(t, fr, b1, VertexSet::of({1, 2}))) == L{"b", "c", "u"});
  CHECK(ideal_slice_IS(t, fr, b1, VertexSet{}).dim() == 0);
  CHECK(ideal_slice_IS(t, fr, b1, VertexSet::of({0, 1, 2})).dim() == 6);
  // I_a in degree two: x^a times everything it meets, plus x^b x^c
  const auto b2 = graded_basis(fr.link, 2, 6);
  const auto ia = ideal_slice_IS(t, fr, b2, VertexSet::of({0}));
  for (auto i : ia.indices()) {
    const Face s = b2.monomials[i].support();
    CHECK((s.contains(t.vertex_id("a")) || s == face(t, {"b", "c"})));
  }
  CHECK(ia.dim() == 6);  // a^2, ab, ac, av, aw, bc
}

TEST_CASE("I_S membership agrees with generator divisibility", "[face_ring][ideal][property]") {
  for (const auto& name : corpus_names()) {
    const auto t = corpus(name);
    for (Face e : t.complex().faces()) {
      const auto fr = LocalFrame::of(t, e);
      const std::size_t nv = t.vertex_labels().size();
      for (int m = 0; m <= 3; ++m) {
        const auto basis = graded_basis(fr.link, m, nv);
        for (int k = 0; k <= fr.d; ++k)
          for (VertexSet s : subsets_of_size(fr.d, k)) {
            const auto slice = ideal_slice_IS(t, fr, basis, s);
            for (std::size_t i = 0; i < basis.size(); ++i)
              CHECK(slice.member[i] == in_is_by_generators(t, fr, s, basis.monomials[i].support()));
          }
      }
    }
  }
}

TEST_CASE("I_S is monotone in S and ignores untied indices", "[face_ring][ideal][property]") {
  for (const auto& name : corpus_names()) {
    const auto t = corpus(name);
    for (Face e : t.complex().faces()) {
      const auto fr = LocalFrame::of(t, e);
      const auto basis = graded_basis(fr.link, 2, t.vertex_labels().size());
      const VertexSet tied = VertexSet::range(fr.b);
      VertexSet::range(fr.d).for_each_subset([&](VertexSet s) {
        const auto a = ideal_slice_IS(t, fr, basis, s);
        CHECK(a.member == ideal_slice_IS(t, fr, basis, s & tied).member);
        for (int i = 0; i < fr.d; ++i) {
          if (s.contains(i)) continue;
          VertexSet bigger = s;
          bigger.insert(i);
          const auto b = ideal_slice_IS(t, fr, basis, bigger);
          for (std::size_t j = 0; j < basis.size(); ++j)
            if (a.member[j]) CHECK(b.member[j]);
        }
      });
      // the full index set gives the whole ring, the empty one the interior ideal
      const auto ctx = CarrierContext::of(t, fr);
      CHECK(ideal_slice_IS(t, fr, basis, VertexSet::range(fr.d)).dim() == basis.size());
      CHECK(ideal_slice_IS(t, fr, basis, VertexSet{}).dim() == interior_indices(basis, ctx).size());
    }
  }
}

TEST_CASE("special supports of the triforce", "[lsop]") {
  const auto t = corpus("triforce");
  const auto s = special_supports(t, Face{});
  REQUIRE(s.size() == 3);
  CHECK(s[0] == face(t, {"b", "c", "u"}));
  CHECK(s[1] == face(t, {"a", "c", "v"}));
  CHECK(s[2] == face(t, {"a", "b", "w"}));
  const auto sc = special_supports(t, face(t, {"c"}));
  REQUIRE(sc.size() == 2);
  CHECK(sc[0] == face(t, {"a", "b"}));
  CHECK(sc[1] == face(t, {"a", "b", "u", "v"}));
}

TEST_CASE("marriage condition", "[lsop]") {
  const auto edge = build_complex({{0, 1}});
  CHECK(marriage_check({VertexSet::of({0}), VertexSet::of({1})}, edge).ok);
  const auto bad = marriage_check({VertexSet::of({0, 1}), VertexSet::of({2})}, edge);
  REQUIRE_FALSE(bad.ok);
  CHECK(bad.witness->subset_of(VertexSet::of({0, 1})));
  CHECK(bad.witness->size() == 2);
  for (const auto& name : corpus_names()) {
    const auto t = corpus(name);
    for (Face e : t.complex().faces()) CHECK(marriage_check(special_supports(t, e), link(t.complex(), e)).ok);
  }
}

TEST_CASE("sampled l.s.o.p. is deterministic and respects supports", "[lsop]") {
  RationalField q;
  const auto t = corpus("triforce");
  const auto fr = LocalFrame::of(t, Face{});
  const auto a = sample_lsop(q, t, fr, 42);
  const auto b = sample_lsop(q, t, fr, 42);
  const auto c = sample_lsop(q, t, fr, 43);
  REQUIRE(a.verified);
  CHECK(a.attempts >= 1);
  bool same = true, differs = false;
  for (std::size_t i = 0; i < a.forms.size(); ++i) {
    same = same && a.forms[i].coeffs == b.forms[i].coeffs;
    differs = differs || a.forms[i].coeffs != c.forms[i].coeffs;
    CHECK(a.forms[i].support() == a.supports[i]);
    for (const auto& [v, x] : a.forms[i].coeffs) CHECK(abs(x) <= kDefaultCoefficientBound);
  }
  CHECK(same);
  CHECK(differs);
  CHECK(respects_special_supports(a, t, fr));
}

TEST_CASE("verify_lsop rejects bad systems", "[lsop]") {
  RationalField q;
  const auto edge = build_complex({{0, 1}});
  using LF = LinearForm<RationalField>;
  const LF x0{{{0, Rational(1)}}};
  const LF x1{{{1, Rational(1)}}};
  const LF both{{{0, Rational(1)}, {1, Rational(1)}}};
  CHECK(verify_lsop(q, {x0, x1}, edge));
  CHECK(verify_lsop(q, {both, x1}, edge));
  CHECK_FALSE(verify_lsop(q, {x0}, edge));
  CHECK_FALSE(verify_lsop(q, {x0, x0}, edge));
  CHECK_FALSE(verify_lsop(q, {x0, x1, both}, edge));
  // independent over Q, dependent mod 3
  PrimeField f3(3);
  const LinearForm<PrimeField> p{{{0, 1}, {1, 1}}};
  const LinearForm<PrimeField> r{{{0, 1}, {1, f3.from_int(4)}}};
  CHECK_FALSE(verify_lsop(f3, {p, r}, edge));
  const LF rq{{{0, Rational(1)}, {1, Rational(4)}}};
  CHECK(verify_lsop(q, {both, rq}, edge));
}

TEST_CASE("tiny prime fields exhaust retries", "[lsop]") {
  // with coefficients ±1 over F_2 every form is the plain support sum,
  // singular on the central triangle
  const auto t = corpus("triforce");
  const auto fr = LocalFrame::of(t, Face{});
  CHECK_THROWS_AS(sample_lsop(PrimeField(2), t, fr, 1, 1, 2), LsopError);
}

TEST_CASE("Artinian reduction has the h-vector as Hilbert function", "[lsop][property]") {
  RationalField q;
  for (const auto& name : corpus_names()) {
    const auto t = corpus(name);
    for (Face e : t.complex().faces()) {
      const auto fr = LocalFrame::of(t, e);
      const auto ls = sample_lsop(q, t, fr, 3);
      const FaceRing<RationalField> ring(q, fr.link, t.vertex_labels().size());
      auto h = h_vector(fr.link);
      h.resize(static_cast<std::size_t>(fr.d + 3), 0);
      CHECK(quotient_dims(ring, ls.forms, fr.d + 2) == h);
    }
  }
}
