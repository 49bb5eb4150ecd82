#include <fstream>

#include "catch_amalgamated.hpp"
#include "localh/commands.hpp"
#include "support.hpp"

using namespace localh;
using test_support::corpus;

namespace {

json load_file(const std::string& name) { return read_input(std::string(LOCALH_DATA_DIR) + "/" + name); }

CommandResult run(const std::function<CommandResult()>& fn) { return run_command(fn); }

}  // namespace

TEST_CASE("triangulation json roundtrip", "[io]") {
  for (const auto& name : corpus_names()) {
    const auto spec = builtin_corpus(name);
    const json j = to_json(spec);
    const auto back = parse_triangulation(json::parse(canonical_dump(j)));
    CHECK(canonical_dump(to_json(back)) == canonical_dump(j));
    const auto t1 = to_triangulation(spec);
    const auto t2 = to_triangulation(back);
    CHECK(t1.complex() == t2.complex());
    for (Face f : t1.complex().faces()) CHECK(t1.carrier(f) == t2.carrier(f));
  }
  const auto s = builtin_standalone("standalone-cone-6");
  CHECK(canonical_dump(to_json(parse_standalone(to_json(s)))) == canonical_dump(to_json(s)));
}

TEST_CASE("file fixtures match the builtins", "[io]") {
  const auto f = to_triangulation(parse_triangulation(load_file("triforce.json")));
  const auto b = corpus("triforce");
  CHECK(f.complex() == b.complex());
  const auto sa = to_standalone(parse_standalone(load_file("standalone-balanced-6.json")));
  CHECK(sa.carriers == to_standalone(builtin_standalone("standalone-balanced-6")).carriers);
  CHECK(is_standalone_json(load_file("standalone-cone-6.json")));
  CHECK_FALSE(is_standalone_json(load_file("triforce.json")));
}

TEST_CASE("schema files name the keys the loader accepts", "[io]") {
  std::ifstream in(std::string(LOCALH_SCHEMA_DIR) + "/triangulation.schema.json");
  const json schema = json::parse(in);
  CHECK(schema["required"] == json({"name", "simplex_vertices", "vertices", "facets"}));
  for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
    // every declared property is accepted by the parser
    json doc = to_json(triforce_spec());
    if (!doc.contains(it.key())) {
      if (it.key() == "face_carriers") doc[it.key()] = json::array();
      else if (it.key() == "metadata") doc[it.key()] = json::object();
      else doc[it.key()] = "x";
    }
    CHECK_NOTHROW(parse_triangulation(doc));
  }
}

TEST_CASE("schema errors", "[io]") {
  json base = to_json(triforce_spec());
  auto broken = [&](auto&& edit) {
    json j = base;
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(parse_triangulation(load_file("bad-undeclared-vertex.json")), SchemaError);
  CHECK_THROWS_AS(parse_triangulation(broken([](json& j) { j.erase("facets"); })), SchemaError);
  CHECK_THROWS_AS(parse_triangulation(broken([](json& j) { j["extra"] = 1; })), SchemaError);
  CHECK_THROWS_AS(parse_triangulation(broken([](json& j) { j["vertices"][0]["carrier"] = json::array({"zz"}); })),
                  SchemaError);
  CHECK_THROWS_AS(parse_triangulation(broken([](json& j) { j["vertices"][1]["id"] = "a"; })), SchemaError);
  CHECK_THROWS_AS(parse_triangulation(broken([](json& j) { j["vertices"][0]["carrier"] = json::array(); })),
                  SchemaError);
  CHECK_THROWS_AS(parse_triangulation(broken([](json& j) { j["metadata"] = {{"k", {1.5}}}; })), SchemaError);
  CHECK_THROWS_AS(parse_triangulation(json::array()), SchemaError);
  CHECK_THROWS_AS(read_input("builtin:nope"), SchemaError);
  CHECK_THROWS_AS(read_input("/nonexistent/file.json"), SchemaError);
  // duplicate labels inside one facet reach the complex builder
  CHECK_THROWS_AS(to_triangulation(parse_triangulation(broken([](json& j) { j["facets"][0] = {"a", "a", "b"}; }))),
                  ComplexError);
}

TEST_CASE("face arguments", "[cli]") {
  const auto t = corpus("triforce");
  CHECK(cmd_detail::parse_face(t, "") == Face{});
  CHECK(cmd_detail::parse_face(t, "a, w") == t.face_of({"a", "w"}));
  CHECK_THROWS_AS(cmd_detail::parse_face(t, "a,zz"), PreconditionError);
  CHECK_THROWS_AS(cmd_detail::parse_face(t, "u,v"), NotAFace);
}

TEST_CASE("command exit codes", "[cli]") {
  const RunConfig cfg;
  const json tri = read_input("builtin:triforce");
  CHECK(run([&] { return cmd_validate(tri, cfg); }).exit_code == 0);
  CHECK(run([&] { return cmd_validate(read_input("builtin:triforce-annulus"), cfg); }).exit_code == 2);
  CHECK(run([&] { return cmd_validate(load_file("non-quasi-geometric.json"), cfg); }).exit_code == 2);
  CHECK(run([&] { return cmd_local_h(read_input("builtin:triforce-annulus"), "", "both", cfg); }).exit_code == 2);
  CHECK(run([&] { return cmd_validate(load_file("bad-undeclared-vertex.json"), cfg); }).exit_code == 1);
  CHECK(run([&] { return cmd_local_h(tri, "", "sideways", cfg); }).exit_code == 1);
  CHECK(run([&] { return cmd_local_h(tri, "u,v", "both", cfg); }).exit_code == 1);
  RunConfig bad_field;
  bad_field.field = "fp:12";
  CHECK(run([&] { return cmd_local_h(tri, "", "both", bad_field); }).exit_code == 1);
  CHECK(run([&] { return cmd_restrict(tri, "", std::nullopt, cfg); }).exit_code == 0);
  CHECK(run([&] { return cmd_corpus(std::nullopt); }).exit_code == 0);
}

TEST_CASE("local-h command output", "[cli]") {
  const json tri = read_input("builtin:triforce");
  RunConfig cfg;
  const auto r = cmd_local_h(tri, "c", "both", cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.body["ell"] == json({0, 1, 0}));
  CHECK(r.body["agreement"] == true);
  CHECK(r.body["face"] == json({"c"}));
  cfg.field = "fp:101";
  CHECK(cmd_local_h(tri, "", "module", cfg).body["ell"] == json({0, 0, 0, 0}));
  CHECK(cmd_local_h(tri, "", "incexc", cfg).body.contains("module") == false);
}

TEST_CASE("map command reports inapplicable monotonicity", "[cli]") {
  const json tri = read_input("builtin:triforce");
  const auto r = cmd_map(tri, "", "c", true, std::string("a,c"), RunConfig{});
  CHECK(r.exit_code == 0);
  CHECK(r.body["monotonicity"]["applicable"] == false);
  CHECK(r.body["monotonicity"]["ell"] == json({0, 0, 0, 0}));
  CHECK(r.body["monotonicity"]["target_ell"] == json({0, 1, 0}));
  CHECK(r.body["composition"]["composes"] == true);
  CHECK(r.body["zeta_from_theta"] == json({3}));
  const auto s = cmd_map(tri, "a", "a,w", true, std::nullopt, RunConfig{});
  CHECK(s.body["monotonicity"]["surjective"] == true);
}

TEST_CASE("resolution, audit and restrict commands", "[cli]") {
  const json tri = read_input("builtin:triforce");
  const auto res = cmd_resolution(tri, "", RunConfig{});
  CHECK(res.exit_code == 0);
  CHECK(res.body["exactness"]["exact"] == true);
  CHECK(res.body["terms"].size() == 4);
  CHECK(res.body["sign_patterns"]["1"] == json({{1, 2, 3}}));
  const auto au = cmd_audit(tri, "c", RunConfig{});
  CHECK(au.body["verdict"] == "nonvanishing");
  const auto st = cmd_restrict(load_file("standalone-balanced-6.json"), "", std::nullopt, RunConfig{});
  CHECK(st.body["zero"] == true);
  CHECK(st.body["structure"]["partitions"].size() == 2);
  const auto rd = cmd_restrict(tri, "c", std::string("a,b"), RunConfig{});
  CHECK(rd.body["dims"][1].get<int>() >= 1);
}

TEST_CASE("output is deterministic for a fixed configuration", "[cli]") {
  const json tri = read_input("builtin:triforce-starred-center");
  RunConfig cfg;
  cfg.seed = 17;
  const auto a = canonical_dump(cmd_map(tri, "", "z", true, std::nullopt, cfg).body);
  const auto b = canonical_dump(cmd_map(tri, "", "z", true, std::nullopt, cfg).body);
  CHECK(a == b);
  const auto c = canonical_dump(cmd_audit(tri, "", cfg).body);
  CHECK(c == canonical_dump(cmd_audit(tri, "", cfg).body));
}
