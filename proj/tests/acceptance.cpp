// One line per acceptance criterion; exit status is the number of failures.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "localh/commands.hpp"
#include "support.hpp"

using namespace localh;
using test_support::corpus;
using test_support::face;
using Ell = std::vector<std::int64_t>;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string show(const Ell& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string face_name(const Triangulation& t, Face f) {
  std::string s = "{";
  for (const auto& l : t.labels_of(f)) s += (s.size() > 1 ? "," : "") + l;
  return s + "}";
}

Outcome fail(std::string why) { return {false, std::move(why)}; }

const RationalField Q;

Outcome triforce_ground_truth() {
  const json tri = read_input("builtin:triforce");
  for (const auto& [f, want] : std::vector<std::pair<std::string, Ell>>{{"", {0, 0, 0, 0}}, {"c", {0, 1, 0}}}) {
    const auto r = run_command([&] { return cmd_local_h(tri, f, "both", RunConfig{}); });
    if (r.exit_code != 0) return fail("exit code " + std::to_string(r.exit_code) + " for E={" + f + "}");
    const Ell mod = r.body["module"]["ell"].get<Ell>();
    const Ell inc = r.body["incexc"]["ell"].get<Ell>();
    if (mod != want || inc != want)
      return fail("E={" + f + "}: module " + show(mod) + ", incexc " + show(inc) + ", want " + show(want));
  }
  return {true, "E=∅ → (0,0,0,0), E={c} → (0,1,0) by both routes"};
}

template <class Fn>
Outcome over_corpus(Fn&& fn, const char* what) {
  std::size_t instances = 0, pairs = 0;
  for (const auto& name : corpus_names()) {
    const auto t = corpus(name);
    ++instances;
    for (Face e : t.complex().faces()) {
      ++pairs;
      if (auto why = fn(t, e); !why.empty()) return fail(name + " E=" + face_name(t, e) + ": " + why);
    }
  }
  if (instances < 10) return fail("corpus has only " + std::to_string(instances) + " instances");
  return {true, std::string(what) + " on " + std::to_string(instances) + " instances, " + std::to_string(pairs) +
                    " faces"};
}

Outcome oracle_equivalence() {
  return over_corpus(
      [](const Triangulation& t, Face e) -> std::string {
        const auto fr = LocalFrame::of(t, e);
        const auto lm = local_module(Q, t, e, sample_lsop(Q, t, fr, 1), fr.d + 2);
        const auto inc = local_h_incexc(t, e);
        if (lm.ell() != inc) return "module " + show(lm.ell()) + " vs incexc " + show(inc);
        if (!lm.vanishes_above_d()) return "module nonzero above d";
        return {};
      },
      "module ℓ = inclusion-exclusion ℓ");
}

Outcome symmetry_nonnegativity() {
  return over_corpus(
      [](const Triangulation& t, Face e) -> std::string {
        const auto ell = local_h_incexc(t, e);
        const auto d = ell.size() - 1;
        for (std::size_t i = 0; i <= d; ++i) {
          if (ell[i] < 0) return "negative entry in " + show(ell);
          if (ell[i] != ell[d - i]) return "asymmetric " + show(ell);
        }
        return {};
      },
      "ℓ_i = ℓ_{d-i} ≥ 0");
}

Outcome cm_consistency() {
  return over_corpus(
      [](const Triangulation& t, Face e) -> std::string {
        const auto fr = LocalFrame::of(t, e);
        const FaceRing<RationalField> ring(Q, fr.link, t.vertex_labels().size());
        const auto dims = quotient_dims(ring, sample_lsop(Q, t, fr, 1).forms, fr.d + 2);
        auto h = h_vector(fr.link);
        h.resize(static_cast<std::size_t>(fr.d + 3), 0);
        if (dims != h) return "quotient " + show(dims) + " vs h " + show(h);
        return {};
      },
      "Hilbert function of R/θR = padded h-vector");
}

Outcome exactness() {
  return over_corpus(
      [](const Triangulation& t, Face e) -> std::string {
        const auto fr = LocalFrame::of(t, e);
        const auto res = build_resolution(Q, t, e, sample_lsop(Q, t, fr, 1), fr.d + 2);
        const auto rep = verify_exactness(res);
        if (!rep.exact) return rep.failures.front().kind + ": " + rep.failures.front().detail;
        for (std::size_t m = 0; m < rep.term_dims.size(); ++m) {
          std::int64_t alt = -rep.ell[m];
          for (std::size_t k = 0; k < rep.term_dims[m].size(); ++k)
            alt += (k % 2 ? -1 : 1) * static_cast<std::int64_t>(rep.term_dims[m][k]);
          if (alt != 0) return "alternating sum " + std::to_string(alt) + " in degree " + std::to_string(m);
        }
        return {};
      },
      "exact in degrees 0..d+2, alternating sums 0");
}

Outcome presentation() {
  return over_corpus(
      [](const Triangulation& t, Face e) -> std::string {
        const auto fr = LocalFrame::of(t, e);
        try {
          for (const auto& p : presentation_J(Q, t, e, sample_lsop(Q, t, fr, 1), fr.d + 2))
            if (!p.contained || p.j_dim != p.kernel_dim) return "degree " + std::to_string(p.degree);
        } catch (const InvariantViolation& ex) {
          return ex.what();
        }
        return {};
      },
      "J_m = ker(I_m → (R/θR)_m), m ≤ d+2");
}

Outcome monotonicity() {
  std::size_t pairs = 0;
  bool saw_triforce_pair = false;
  for (const auto& name : corpus_names()) {
    const auto t = corpus(name);
    for (Face e : t.complex().faces()) {
      const auto fr = LocalFrame::of(t, e);
      const auto ls = sample_lsop(Q, t, fr, 1);
      for (Face e2 : t.complex().faces()) {
        if (!e.subset_of(e2) || t.carrier(e) != t.carrier(e2)) continue;
        ++pairs;
        const auto phi = induced_map(Q, t, e, e2, ls, 5, fr.d + 2);
        const auto mr = check_monotonicity(t, phi);
        if (!mr.ok())
          return fail(name + " " + face_name(t, e) + "→" + face_name(t, e2) + ": " + show(mr.ell) + " vs " +
                      show(mr.ell2));
        if (name == "triforce" && e == face(t, {"a"}) && e2 == face(t, {"a", "w"})) saw_triforce_pair = true;
      }
    }
  }
  if (!saw_triforce_pair) return fail("triforce pair ({a},{a,w}) missing");
  const auto t = corpus("triforce");
  const Face c = face(t, {"c"});
  const auto phi = induced_map(Q, t, Face{}, c, sample_lsop(Q, t, LocalFrame::of(t, Face{}), 1), 5, 3);
  try {
    check_monotonicity(t, phi);
    return fail("(∅,{c}) was not rejected");
  } catch (const PreconditionError&) {
  }
  const Ell a = local_h_incexc(t, Face{}), b = local_h_incexc(t, c);
  if (a != Ell{0, 0, 0, 0} || b != Ell{0, 1, 0}) return fail("(∅,{c}) ℓ-vectors " + show(a) + " vs " + show(b));
  return {true, std::to_string(pairs) + " equal-carrier pairs surjective and monotone; (∅,{c}) rejected with " +
                    show(a) + " vs " + show(b)};
}

Outcome functoriality() {
  std::size_t chains = 0;
  auto check = [&](const Triangulation& t, Face e, Face e2, Face e3) -> std::string {
    ++chains;
    const auto fr = LocalFrame::of(t, e);
    const auto r = check_functor_composition(Q, t, e, e2, e3, sample_lsop(Q, t, fr, 1), 3, 4242, fr.d + 2);
    if (!r.ok())
      return t.name() + " " + face_name(t, e) + "⊂" + face_name(t, e2) + "⊂" + face_name(t, e3) + " spans " +
             std::to_string(r.spans_agree) + " composes " + std::to_string(r.composes) + " seeds " +
             std::to_string(r.seed_invariant);
    return {};
  };
  {
    const auto t = corpus("triforce");
    if (auto why = check(t, Face{}, face(t, {"c"}), face(t, {"a", "c"})); !why.empty()) return fail(why);
  }
  // one chain ∅ ⊂ {x} ⊂ {x,y} ⊂ ... along a facet of every instance
  for (const auto& name : corpus_names()) {
    const auto t = corpus(name);
    const auto verts = t.complex().facets().back().elements();
    if (verts.size() < 2) continue;
    const Face x = Face::singleton(verts[0]);
    const Face xy = x | Face::singleton(verts[1]);
    if (auto why = check(t, Face{}, x, xy); !why.empty()) return fail(why);
  }
  return {true, std::to_string(chains) + " chains compose; φ equal under two ζ seeds"};
}

Outcome standalone() {
  const auto bal = to_standalone(builtin_standalone("standalone-balanced-6"));
  const auto cone = to_standalone(builtin_standalone("standalone-cone-6"));
  for (std::uint64_t seed : {1u, 2u}) {
    const auto rb = restricted_standalone(Q, bal, seed, 6);
    if (!rb.module.is_zero()) return fail("balanced face nonzero: " + show(rb.module.dims));
    const auto rc = restricted_standalone(Q, cone, seed, 6);
    if (rc.module.dims[3] == 0) return fail("cone face zero in degree 3: " + show(rc.module.dims));
  }
  return {true, "balanced face 0 in degrees ≤ 6, cone face nonzero in degree 3, seeds 1 and 2"};
}

Outcome audit() {
  std::size_t vanishing = 0;
  auto r = over_corpus(
      [&](const Triangulation& t, Face e) -> std::string {
        const auto rep = vanishing_structure_audit(Q, t, e, sample_lsop(Q, t, LocalFrame::of(t, e), 1));
        for (const auto& a : rep.audits)
          if (!a.ok) return a.check + " " + a.detail;
        if (!rep.vanishing) return {};
        ++vanishing;
        for (const auto& fs : rep.faces) {
          const auto best = fs.min_part();
          if (!fs.u_pyramid && best && *best <= 2) return "partition on " + face_name(t, fs.face);
        }
        return {};
      },
      "no contradiction");
  if (r.ok) r.detail += ", " + std::to_string(vanishing) + " vanishing (Γ,E)";
  return r;
}

Outcome lsop_pipeline() {
  return over_corpus(
      [](const Triangulation& t, Face e) -> std::string {
        const auto fr = LocalFrame::of(t, e);
        if (!marriage_check(special_supports(t, fr), fr.link).ok) return "marriage condition fails";
        const auto a = sample_lsop(Q, t, fr, 1, kDefaultCoefficientBound, kDefaultLsopRetries);
        const auto b = sample_lsop(Q, t, fr, 2, kDefaultCoefficientBound, kDefaultLsopRetries);
        if (!a.verified || !b.verified) return "unverified";
        if (local_module(Q, t, e, a, fr.d).ell() != local_module(Q, t, e, b, fr.d).ell()) return "seed dependent ℓ";
        return {};
      },
      "marriage, sampling within 32 draws at B=997, seed-independent ℓ");
}

std::string capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  pclose(p);
  return out;
}

Outcome determinism() {
  const std::string cli = LOCALH_CLI;
  const std::vector<std::string> runs = {
      "local-h builtin:triforce --face c", "resolution builtin:triforce",
      "map builtin:triforce --face a --target a,w --check-surjective", "audit builtin:stellar-interior-3simplex",
      "restrict builtin:standalone-balanced-6", "--seed 9 --field fp:101 local-h builtin:iterated-2simplex"};
  for (const auto& r : runs) {
    const auto a = capture(cli + " " + r + " 2>&1");
    const auto b = capture(cli + " " + r + " 2>&1");
    if (a != b) return fail("differs: " + r);
    if (a.empty() || a.front() != '{') return fail("no JSON from: " + r);
  }
  return {true, std::to_string(runs.size()) + " commands byte-identical across runs"};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {
      triforce_ground_truth, oracle_equivalence, symmetry_nonnegativity, cm_consistency,
      exactness,             presentation,       monotonicity,           functoriality,
      standalone,            audit,              lsop_pipeline,          determinism};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 10.0) o = fail(o.detail + " [took " + std::to_string(secs) + " s]");
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << "criterion " << (i + 1) << ": " << (o.ok ? "PASS" : "FAIL") << "  " << o.detail << "  ("
         << secs << " s)";
    std::cout << line.str() << std::endl;
    if (!o.ok) ++failures;
  }
  return failures;
}
