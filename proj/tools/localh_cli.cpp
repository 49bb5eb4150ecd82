#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "localh/commands.hpp"

using namespace localh;

namespace {

void emit(const CommandResult& r, const std::string& format) {
  if (format == "text") {
    for (auto it = r.body.begin(); it != r.body.end(); ++it)
      std::cout << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  } else {
    std::cout << canonical_dump(r.body);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local face modules of triangulated simplices"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "json";
  std::string mode = "full";
  std::optional<std::uint64_t> seed;
  int max_degree = -1;
  app.add_option("--seed", seed, "RNG seed (default: $LOCALH_SEED, else 1)");
  app.add_option("--field", cfg.field, "q or fp:<p>")->capture_default_str();
  app.add_option("--max-degree", max_degree, "highest degree inspected (default d+2)");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--mode", mode, "validation mode")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();

  std::string input;
  std::string face;
  std::string method = "both";
  std::string target;
  bool surjective = false;
  std::optional<std::string> compose;
  std::optional<std::string> delta;
  std::optional<std::string> fixture;

  auto* validate = app.add_subcommand("validate", "check the homology-triangulation and quasi-geometric axioms");
  validate->add_option("input", input, "file, - for stdin, or builtin:<name>")->required();

  auto* localh = app.add_subcommand("local-h", "local h-vector of (Γ,E)");
  localh->add_option("input", input)->required();
  localh->add_option("--face,-E", face, "comma-separated vertex labels (empty: ∅)");
  localh->add_option("--method", method)->check(CLI::IsMember({"module", "incexc", "both"}))->capture_default_str();

  auto* resolution = app.add_subcommand("resolution", "build and verify the I_S resolution");
  resolution->add_option("input", input)->required();
  resolution->add_option("--face,-E", face);
  resolution->add_flag("--verify", "kept for compatibility; exactness is always verified");

  auto* map = app.add_subcommand("map", "induced map L(Γ,E) → L(Γ,E')");
  map->add_option("input", input)->required();
  map->add_option("--face,-E", face);
  map->add_option("--target", target, "E'")->required();
  map->add_flag("--check-surjective", surjective);
  map->add_option("--check-compose", compose, "E'' for the composition check");

  auto* audit = app.add_subcommand("audit", "vanishing-structure audit");
  audit->add_option("input", input)->required();
  audit->add_option("--face,-E", face);

  auto* restrict_ = app.add_subcommand("restrict", "restricted local face module");
  restrict_->add_option("input", input)->required();
  restrict_->add_option("--face,-E", face);
  restrict_->add_option("--delta", delta, "face of lk(E) to restrict to (default: the whole link)");

  auto* corpus = app.add_subcommand("corpus", "list builtins or print one");
  corpus->add_option("name", fixture);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (seed) {
    cfg.seed = *seed;
  } else if (const char* env = std::getenv("LOCALH_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "LOCALH_SEED must be an unsigned integer\n";
      return 1;
    }
  }
  if (max_degree >= 0) cfg.max_degree = max_degree;
  cfg.mode = mode == "fast" ? ValidationMode::fast : ValidationMode::full;

  const CommandResult r = run_command([&]() -> CommandResult {
    if (*corpus) return cmd_corpus(fixture);
    const json in = read_input(input);
    if (*validate) return cmd_validate(in, cfg);
    if (*localh) return cmd_local_h(in, face, method, cfg);
    if (*resolution) return cmd_resolution(in, face, cfg);
    if (*map) return cmd_map(in, face, target, surjective, compose, cfg);
    if (*audit) return cmd_audit(in, face, cfg);
    return cmd_restrict(in, face, delta, cfg);
  });
  emit(r, format);
  return r.exit_code;
}
