#pragma once

// Command implementations behind the localh executable. Each returns an exit
// code and a JSON body; exceptions are mapped to exit codes by run_command.

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "localh/localh.hpp"

namespace localh {

struct RunConfig {
  std::uint64_t seed = 1;
  std::string field = "q";
  std::optional<int> max_degree;
  ValidationMode mode = ValidationMode::full;
};

struct CommandResult {
  int exit_code = 0;
  json body;
};

/// Input is well-formed but fails a mathematical check.
class ValidationFailure : public std::runtime_error {
public:
  ValidationFailure(std::string what, json report) : std::runtime_error(std::move(what)), report_(std::move(report)) {}
  const json& report() const { return report_; }

private:
  json report_;
};

inline std::uint64_t parse_prime(const std::string& field) {
  if (field == "q") return 0;
  if (field.rfind("fp:", 0) != 0) throw PreconditionError("--field must be q or fp:<p>");
  std::uint64_t p = 0;
  try {
    std::size_t used = 0;
    p = std::stoull(field.substr(3), &used);
    if (used != field.size() - 3) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw PreconditionError("--field fp:<p> needs an integer p");
  }
  if (!is_prime(p) || p >= (std::uint64_t{1} << 32)) throw PreconditionError("--field fp:<p> needs a prime p < 2^32");
  return p;
}

template <class Fn>
json with_field(const RunConfig& cfg, Fn&& fn) {
  const std::uint64_t p = parse_prime(cfg.field);
  if (p == 0) return fn(RationalField{});
  return fn(PrimeField(p));
}

namespace cmd_detail {

inline json labels(const Triangulation& t, Face f) { return face_json(t.labels_of(f)); }
inline json simplex_labels(const Triangulation& t, SimplexSet s) { return face_json(t.simplex_labels_of(s)); }

inline Face parse_face(const Triangulation& t, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(item.substr(b, e - b + 1));
  }
  for (const auto& p : parts)
    if (std::find(t.vertex_labels().begin(), t.vertex_labels().end(), p) == t.vertex_labels().end())
      throw PreconditionError("unknown vertex '" + p + "'");
  const Face f = t.face_of(parts);
  if (!t.complex().contains(f)) throw NotAFace("'" + text + "' is not a face of Γ");
  return f;
}

inline json validation_json(const Triangulation& t, const ValidationReport& rep, const QuasiGeometricResult& qg,
                            ValidationMode mode) {
  json j;
  j["command"] = "validate";
  j["name"] = t.name();
  j["mode"] = mode == ValidationMode::fast ? "fast" : "full";
  j["homology_triangulation"] = rep.ok;
  j["quasi_geometric"] = qg.ok;
  j["ok"] = rep.ok && qg.ok;
  j["violations"] = json::array();
  for (const auto& v : rep.violations) {
    json x;
    x["kind"] = v.kind;
    x["u"] = simplex_labels(t, v.u);
    x["face"] = v.face ? labels(t, *v.face) : json(nullptr);
    x["detail"] = v.detail;
    j["violations"].push_back(std::move(x));
  }
  if (!qg.ok) {
    j["quasi_geometric_witness"] = {{"face", labels(t, *qg.witness_face)}, {"u", simplex_labels(t, *qg.witness_u)}};
  }
  j["f_vector"] = t.complex().f_vector();
  j["h_vector"] = h_vector(t.complex());
  return j;
}

}  // namespace cmd_detail

inline Triangulation load_triangulation(const json& input, std::vector<std::string>* warnings = nullptr) {
  if (is_standalone_json(input)) throw SchemaError("expected a triangulation (no \"facets\" key found)");
  return to_triangulation(parse_triangulation(input), warnings);
}

/// Parses and validates; throws ValidationFailure when the input is not a
/// quasi-geometric homology triangulation.
inline Triangulation load_valid(const json& input, const RunConfig& cfg) {
  Triangulation t = load_triangulation(input);
  const auto rep = validate_homology_triangulation(t, cfg.mode, parse_prime(cfg.field));
  const auto qg = is_quasi_geometric(t);
  if (!rep.ok || !qg.ok)
    throw ValidationFailure("input is not a quasi-geometric homology triangulation",
                            cmd_detail::validation_json(t, rep, qg, cfg.mode));
  return t;
}

inline CommandResult cmd_validate(const json& input, const RunConfig& cfg) {
  std::vector<std::string> warnings;
  const Triangulation t = load_triangulation(input, &warnings);
  const auto rep = validate_homology_triangulation(t, cfg.mode, parse_prime(cfg.field));
  const auto qg = is_quasi_geometric(t);
  json j = cmd_detail::validation_json(t, rep, qg, cfg.mode);
  j["warnings"] = warnings;
  j["field"] = cfg.field;
  return {j["ok"].get<bool>() ? 0 : 2, j};
}

inline int horizon(const RunConfig& cfg, int d) { return cfg.max_degree ? *cfg.max_degree : d + 2; }

inline CommandResult cmd_local_h(const json& input, const std::string& face, const std::string& method,
                                 const RunConfig& cfg) {
  if (method != "module" && method != "incexc" && method != "both")
    throw PreconditionError("--method must be module, incexc or both");
  const Triangulation t = load_valid(input, cfg);
  const Face e = cmd_detail::parse_face(t, face);
  const LocalFrame fr = LocalFrame::of(t, e);
  json j;
  j["command"] = "local-h";
  j["name"] = t.name();
  j["face"] = cmd_detail::labels(t, e);
  j["d"] = fr.d;
  j["method"] = method;
  j["field"] = cfg.field;
  j["seed"] = cfg.seed;
  std::vector<std::int64_t> mod, inc;
  if (method != "incexc") {
    j["module"] = with_field(cfg, [&](const auto& field) {
      const auto ls = sample_lsop(field, t, fr, cfg.seed);
      const auto lm = local_module(field, t, e, ls, horizon(cfg, fr.d));
      json m;
      m["ell"] = lm.ell();
      std::vector<std::int64_t> dims;
      for (const auto& g : lm.degrees) dims.push_back(g.ell);
      m["dims"] = dims;
      m["vanishes_above_d"] = lm.vanishes_above_d();
      m["lsop_attempts"] = ls.attempts;
      mod = lm.ell();
      return m;
    });
  }
  if (method != "module") {
    inc = local_h_incexc(t, e);
    j["incexc"] = {{"ell", inc}};
  }
  j["ell"] = method == "incexc" ? inc : mod;
  bool bad = false;
  if (method == "both") {
    j["agreement"] = mod == inc;
    bad = mod != inc;
  }
  if (j.contains("module") && !j["module"]["vanishes_above_d"].get<bool>()) bad = true;
  return {bad ? 3 : 0, j};
}

inline CommandResult cmd_resolution(const json& input, const std::string& face, const RunConfig& cfg) {
  const Triangulation t = load_valid(input, cfg);
  const Face e = cmd_detail::parse_face(t, face);
  const LocalFrame fr = LocalFrame::of(t, e);
  bool exact = true;
  json j = with_field(cfg, [&](const auto& field) {
    const auto ls = sample_lsop(field, t, fr, cfg.seed);
    const auto res = build_resolution(field, t, e, ls, horizon(cfg, fr.d));
    const auto rep = verify_exactness(res);
    exact = rep.exact;
    json out;
    out["terms"] = json::array();
    for (int k = 0; k <= res.d; ++k) {
      json term;
      term["position"] = k;
      term["summands"] = json::array();
      for (VertexSet s : res.subsets[static_cast<std::size_t>(k)]) {
        std::vector<int> idx;
        for (int i : s.elements()) idx.push_back(i + 1);
        term["summands"].push_back({{"forms", idx}, {"simplex_part", cmd_detail::simplex_labels(t, fr.simplex_part(s))}});
      }
      std::vector<std::size_t> dims;
      for (const auto& td : rep.term_dims) dims.push_back(td[static_cast<std::size_t>(k)]);
      term["dims"] = dims;
      out["terms"].push_back(std::move(term));
    }
    json signs = json::object();
    for (int k = 1; k <= res.d; ++k) signs[std::to_string(k)] = res.sign_pattern(k);
    out["sign_patterns"] = signs;
    json ex;
    ex["exact"] = rep.exact;
    ex["max_degree"] = rep.max_degree;
    ex["ranks"] = rep.ranks;
    ex["ell"] = rep.ell;
    ex["failures"] = json::array();
    for (const auto& f : rep.failures)
      ex["failures"].push_back({{"position", f.position}, {"degree", f.degree}, {"kind", f.kind}, {"detail", f.detail}});
    out["exactness"] = ex;
    return out;
  });
  j["command"] = "resolution";
  j["name"] = t.name();
  j["face"] = cmd_detail::labels(t, e);
  j["d"] = fr.d;
  j["b"] = fr.b;
  j["field"] = cfg.field;
  j["seed"] = cfg.seed;
  return {exact ? 0 : 3, j};
}

inline CommandResult cmd_map(const json& input, const std::string& face, const std::string& target,
                             bool check_surjective, const std::optional<std::string>& compose, const RunConfig& cfg) {
  const Triangulation t = load_valid(input, cfg);
  const Face e = cmd_detail::parse_face(t, face);
  const Face e2 = cmd_detail::parse_face(t, target);
  std::optional<Face> e3;
  if (compose) e3 = cmd_detail::parse_face(t, *compose);
  const LocalFrame fr = LocalFrame::of(t, e);
  const int m_max = horizon(cfg, fr.d);
  int code = 0;
  json j = with_field(cfg, [&](const auto& field) {
    const auto ls = sample_lsop(field, t, fr, cfg.seed);
    const auto phi = induced_map(field, t, e, e2, ls, SeededRng(cfg.seed).split("map").next(), m_max);
    json out;
    out["d"] = phi.d;
    out["target_d"] = phi.d2;
    out["source_dims"] = phi.source_dims;
    out["target_dims"] = phi.target_dims;
    std::vector<std::size_t> ranks;
    for (const auto& m : phi.matrices) ranks.push_back(rank(m));
    out["ranks"] = ranks;
    std::vector<int> tied;
    for (int i : phi.tied) tied.push_back(i + 1);
    out["zeta_from_theta"] = tied;
    out["star_relations_checked"] = phi.relations_checked;
    if (check_surjective) {
      json mono;
      if (t.carrier(e) != t.carrier(e2)) {
        mono["applicable"] = false;
        mono["reason"] = "carriers differ";
        mono["ell"] = local_h_incexc(t, e);
        mono["target_ell"] = local_h_incexc(t, e2);
      } else {
        const auto mr = check_monotonicity(t, phi);
        mono["applicable"] = true;
        mono["surjective"] = mr.surjective;
        mono["ell_monotone"] = mr.ell_monotone;
        mono["source_symmetric"] = mr.source_symmetric;
        mono["ell"] = mr.ell;
        mono["target_ell"] = mr.ell2;
        if (!mr.ok()) code = 3;
      }
      out["monotonicity"] = mono;
    }
    if (e3) {
      const std::uint64_t sa = SeededRng(cfg.seed).split("map").next();
      const std::uint64_t sb = SeededRng(cfg.seed).split("map-alt").next();
      const auto cr = check_functor_composition(field, t, e, e2, *e3, ls, sa, sb, m_max);
      out["composition"] = {{"third", cmd_detail::labels(t, *e3)},
                            {"spans_agree", cr.spans_agree},
                            {"composes", cr.composes},
                            {"seed_invariant", cr.seed_invariant}};
      if (!cr.ok()) code = 3;
    }
    return out;
  });
  j["command"] = "map";
  j["name"] = t.name();
  j["face"] = cmd_detail::labels(t, e);
  j["target"] = cmd_detail::labels(t, e2);
  j["field"] = cfg.field;
  j["seed"] = cfg.seed;
  return {code, j};
}

inline CommandResult cmd_audit(const json& input, const std::string& face, const RunConfig& cfg) {
  const Triangulation t = load_valid(input, cfg);
  const Face e = cmd_detail::parse_face(t, face);
  const LocalFrame fr = LocalFrame::of(t, e);
  bool contradiction = false;
  json j = with_field(cfg, [&](const auto& field) {
    const auto ls = sample_lsop(field, t, fr, cfg.seed);
    const auto rep = vanishing_structure_audit(field, t, e, ls);
    contradiction = rep.contradiction();
    json out;
    out["verdict"] = rep.verdict();
    out["ell"] = rep.ell;
    out["witnesses"] = json::array();
    for (const auto& w : rep.witnesses)
      out["witnesses"].push_back({{"face", cmd_detail::labels(t, w.face)}, {"kind", w.kind}, {"degree", w.degree}});
    out["audits"] = json::array();
    for (const auto& a : rep.audits)
      out["audits"].push_back({{"check", a.check},
                               {"face", a.face ? cmd_detail::labels(t, *a.face) : json(nullptr)},
                               {"ok", a.ok},
                               {"detail", a.detail}});
    out["faces"] = json::array();
    for (const auto& fs : rep.faces) {
      json x;
      x["face"] = cmd_detail::labels(t, fs.face);
      x["apexes"] = cmd_detail::labels(t, fs.apexes);
      x["pyramid"] = fs.pyramid;
      x["u_pyramid"] = fs.u_pyramid;
      x["partitions"] = json::array();
      for (const auto& p : fs.partitions)
        x["partitions"].push_back(json::array({cmd_detail::labels(t, p.f1), cmd_detail::labels(t, p.f2)}));
      out["faces"].push_back(std::move(x));
    }
    return out;
  });
  j["command"] = "audit";
  j["name"] = t.name();
  j["face"] = cmd_detail::labels(t, e);
  j["field"] = cfg.field;
  j["seed"] = cfg.seed;
  return {contradiction ? 3 : 0, j};
}

inline CommandResult cmd_restrict(const json& input, const std::string& face, const std::optional<std::string>& delta,
                                  const RunConfig& cfg) {
  json j;
  j["command"] = "restrict";
  j["field"] = cfg.field;
  j["seed"] = cfg.seed;
  auto dims_json = [](const RestrictedModule& rm) {
    json m;
    m["dims"] = rm.dims;
    m["interior_dims"] = rm.i_dims;
    m["relation_dims"] = rm.j_dims;
    m["zero"] = rm.is_zero();
    return m;
  };
  if (is_standalone_json(input)) {
    const StandaloneSpec spec = parse_standalone(input);
    const StandaloneFace sf = to_standalone(spec);
    const int m_max = horizon(cfg, sf.n() - sf.e_size);
    j.update(with_field(cfg, [&](const auto& field) {
      const auto r = restricted_standalone(field, sf, cfg.seed, m_max);
      json out = dims_json(r.module);
      out["seeds"] = {r.seed_a, r.seed_b};
      out["attempts"] = r.attempts;
      return out;
    }));
    const auto fs = face_structure(sf.context(), sf.face());
    json st;
    std::vector<std::string> apexes;
    for (int w : fs.apexes.elements()) apexes.push_back(sf.vertex_labels[static_cast<std::size_t>(w)]);
    st["apexes"] = face_json(apexes);
    st["pyramid"] = fs.pyramid;
    st["u_pyramid"] = fs.u_pyramid;
    st["partitions"] = json::array();
    auto names = [&](Face f) {
      std::vector<std::string> out;
      for (int w : f.elements()) out.push_back(sf.vertex_labels[static_cast<std::size_t>(w)]);
      return face_json(out);
    };
    for (const auto& p : fs.partitions) st["partitions"].push_back(json::array({names(p.f1), names(p.f2)}));
    j["structure"] = st;
    j["name"] = spec.name;
    j["standalone"] = true;
    return {0, j};
  }
  const Triangulation t = load_valid(input, cfg);
  const Face e = cmd_detail::parse_face(t, face);
  const LocalFrame fr = LocalFrame::of(t, e);
  SimplicialComplex sub = fr.link;
  if (delta) {
    const Face f = cmd_detail::parse_face(t, *delta);
    if (!fr.link.contains(f)) throw PreconditionError("Δ is not a face of lk(E)");
    sub = SimplicialComplex(std::vector<Face>{f});
    j["delta"] = cmd_detail::labels(t, f);
  } else {
    j["delta"] = "link";
  }
  j.update(with_field(cfg, [&](const auto& field) {
    const auto ls = sample_lsop(field, t, fr, cfg.seed);
    return dims_json(restrict_module(field, t, e, sub, ls, horizon(cfg, fr.d)));
  }));
  j["name"] = t.name();
  j["face"] = cmd_detail::labels(t, e);
  j["standalone"] = false;
  return {0, j};
}

inline CommandResult cmd_corpus(const std::optional<std::string>& name) {
  if (!name) {
    json j;
    j["command"] = "corpus";
    j["corpus"] = corpus_names();
    j["invalid"] = invalid_fixture_names();
    j["standalone"] = standalone_names();
    return {0, j};
  }
  return {0, read_input("builtin:" + *name)};
}

/// Maps exceptions to exit codes: 1 usage/schema, 2 validation, 3 internal.
inline CommandResult run_command(const std::function<CommandResult()>& fn) {
  auto error = [](int code, const std::string& kind, const std::string& msg) {
    return CommandResult{code, json{{"error", kind}, {"message", msg}}};
  };
  try {
    return fn();
  } catch (const ValidationFailure& e) {
    json j = e.report();
    j["error"] = "validation";
    j["message"] = e.what();
    return {2, j};
  } catch (const LsopError& e) {
    return error(2, "lsop", e.what());
  } catch (const InvariantViolation& e) {
    return error(3, "internal", e.what());
  } catch (const SchemaError& e) {
    return error(1, "schema", e.what());
  } catch (const std::invalid_argument& e) {
    return error(1, "usage", e.what());
  } catch (const std::logic_error& e) {
    return error(3, "internal", e.what());
  }
}

}  // namespace localh
