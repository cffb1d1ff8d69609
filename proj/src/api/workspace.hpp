#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ainerve/doldkan.hpp"
#include "ainerve/nerve.hpp"
#include "ainerve/pretr.hpp"
#include "ainerve/scat.hpp"
#include "json.hpp"

namespace ain::api {

using json = nlohmann::json;

// bad document, unknown id, non-inner p, cap exceeded: exit status 2
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CategoryEntry {
  std::shared_ptr<AInfCategory> cat;
  std::optional<ChainDgCategory> dg;  // chain-model categories only
  std::shared_ptr<MapCache> maps;     // mapping spaces, built on first use
  int simplex_n = -1;                 // unmodified A[Delta^n]
};

struct ComplexEntry {
  std::optional<ChainComplex> complex;
  std::string error;  // set when the declared differential fails d^2 = 0
};

struct SimplexEntry {
  std::string category;
  NerveSimplex simplex;
};

struct BigEntry {
  std::string category;
  BigNerveSimplex simplex;
};

struct TwistedEntry {
  std::string category;
  TwistedComplex complex;
};

struct Workspace {
  std::uint64_t seed = 0;
  int cap = 4;
  std::map<std::string, ComplexEntry> complexes;
  std::map<std::string, CategoryEntry> categories;
  std::map<std::string, SimplexEntry> simplices;
  std::map<std::string, BigEntry> big_simplices;
  std::map<std::string, TwistedEntry> twisted;
  std::vector<std::string> warnings;

  CategoryEntry& category(const std::string& id);
  MapCache& maps(const std::string& id);
};

// field: "rational" or "fp:P"
void apply_field(const std::string& field);
// seed/cap from the caller override the document when given
Workspace load_workspace(const std::string& text, std::optional<std::uint64_t> seed, std::optional<int> cap);

json vec_json(const Vec& v);

struct CmdOptions {
  SignMode mode = SignMode::classical;
  int cap = 4;
  std::uint64_t seed = 0;
};

// names of the module operations a command invoked
using Trace = std::set<std::string>;

// status: 0 pass, 1 defects; input errors are thrown as InputError
struct CmdResult {
  json report;
  int status = 0;
};

CmdResult cmd_validate(Workspace& ws, const CmdOptions& o, Trace& t);
CmdResult cmd_fill_horn(Workspace& ws, const std::string& id, int p, const CmdOptions& o, Trace& t);
CmdResult cmd_compare(Workspace& ws, const std::string& id, const CmdOptions& o, Trace& t);
CmdResult cmd_cube(int m, const CmdOptions& o, Trace& t);
CmdResult cmd_dk_roundtrip(Workspace& ws, const std::string& id, const CmdOptions& o, Trace& t);
CmdResult cmd_stable(Workspace& ws, const std::string& id, int trials, const CmdOptions& o, Trace& t);
CmdResult cmd_self_test(const CmdOptions& o);

std::string render_text(const json& report);

}  // namespace ain::api
