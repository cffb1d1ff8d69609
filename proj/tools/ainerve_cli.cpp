#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "ainerve.h"

namespace {

int code(ain_status s) {
  switch (s) {
    case AIN_OK: return 0;
    case AIN_DEFECTS: return 1;
    case AIN_INPUT_ERROR: return 2;
    default: return 3;
  }
}

int emit(ain_status s, char* report) {
  if (report) {
    std::fputs(report, stdout);
    ain_string_free(report);
  } else if (s != AIN_OK && s != AIN_DEFECTS) {
    std::fprintf(stderr, "error: %s\n", ain_last_error());
  }
  return code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact A-infinity nerve toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string doc, field, sign_mode = "classical", format = "json";
  std::uint64_t seed = 0;
  int cap = 0;
  app.add_option("--doc", doc, "workspace document (JSON)");
  auto* seed_opt = app.add_option("--seed", seed, "PRNG seed, overrides the document");
  app.add_option("--cap", cap, "level / arity cap, overrides the document")->check(CLI::Range(1, 8));
  app.add_option("--field", field, "rational | fp:P");
  app.add_option("--sign-mode", sign_mode, "Alexander-Whitney sign")->check(CLI::IsMember({"paper", "classical"}));
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));

  std::string id;
  int p = 0, m = 0, trials = 50;
  auto* validate = app.add_subcommand("validate", "run every validator on the document");
  auto* fill = app.add_subcommand("fill-horn", "fill the inner horn of a simplex");
  fill->add_option("simplex", id)->required();
  fill->add_option("p", p)->required();
  auto* compare = app.add_subcommand("compare", "big-to-small comparison of a big simplex");
  compare->add_option("big_simplex", id)->required();
  auto* cube = app.add_subcommand("cube", "cube decomposition of Delta^1 x ... ");
  cube->add_option("m", m)->required();
  auto* dkr = app.add_subcommand("dk-roundtrip", "Dold-Kan round trip of a chain complex");
  dkr->add_option("complex", id)->required();
  auto* stable = app.add_subcommand("stable", "stability checks on a chain dg-category");
  stable->add_option("category", id)->required();
  stable->add_option("--trials", trials, "number of (f, Z) trials");
  auto* self = app.add_subcommand("self-test", "run every command on a built-in document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  ain_options o;
  ain_default_options(&o);
  o.seed = seed;
  o.seed_set = seed_opt->count() > 0;
  o.cap = cap;
  o.sign_mode = sign_mode == "paper" ? AIN_SIGN_PAPER : AIN_SIGN_CLASSICAL;
  o.format = format == "text" ? AIN_FORMAT_TEXT : AIN_FORMAT_JSON;

  if (!field.empty() && ain_set_field(field.c_str()) != AIN_OK) {
    std::fprintf(stderr, "error: %s\n", ain_last_error());
    return 2;
  }
  char* report = nullptr;
  if (app.got_subcommand(cube) || app.got_subcommand(self)) {
    ain_status s = app.got_subcommand(cube) ? ain_cmd_cube(m, &o, &report) : ain_cmd_self_test(&o, &report);
    return emit(s, report);
  }

  if (doc.empty()) {
    std::fprintf(stderr, "error: --doc is required for this command\n");
    return 2;
  }
  ain_workspace* ws = nullptr;
  if (ain_workspace_load_file_ex(doc.c_str(), &o, &ws) != AIN_OK) {
    std::fprintf(stderr, "error: %s\n", ain_last_error());
    return 2;
  }
  ain_status s = AIN_INTERNAL_ERROR;
  if (app.got_subcommand(validate)) s = ain_cmd_validate(ws, &o, &report);
  else if (app.got_subcommand(fill)) s = ain_cmd_fill_horn(ws, id.c_str(), p, &o, &report);
  else if (app.got_subcommand(compare)) s = ain_cmd_compare(ws, id.c_str(), &o, &report);
  else if (app.got_subcommand(dkr)) s = ain_cmd_dk_roundtrip(ws, id.c_str(), &o, &report);
  else if (app.got_subcommand(stable)) s = ain_cmd_stable(ws, id.c_str(), trials, &o, &report);
  ain_workspace_free(ws);
  return emit(s, report);
}
