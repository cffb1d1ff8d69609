#include <cstring>
#include <fstream>
#include <sstream>

#include "ainerve.h"
#include "workspace.hpp"

using ain::api::json;

struct ain_workspace {
  ain::api::Workspace ws;
};

namespace {

thread_local std::string last_error;
bool field_set = false;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

ain::api::CmdOptions convert(const ain_options* o, const ain_workspace* ws) {
  ain_options d;
  ain_default_options(&d);
  if (!o) o = &d;
  ain::api::CmdOptions c;
  c.mode = o->sign_mode == AIN_SIGN_PAPER ? ain::SignMode::paper : ain::SignMode::classical;
  c.cap = ws ? ws->ws.cap : (o->cap > 0 ? o->cap : 4);
  c.seed = o->seed_set || !ws ? o->seed : ws->ws.seed;
  return c;
}

std::string render(const json& r, const ain_options* o) {
  if (o && o->format == AIN_FORMAT_TEXT) return ain::api::render_text(r);
  return r.dump(2) + "\n";
}

json error_report(const std::string& command, const std::string& msg) {
  return {{"command", command}, {"status", "error"}, {"error", msg}};
}

// runs a command, mapping exceptions onto status codes
template <class F>
ain_status guarded(const std::string& command, const ain_options* o, char** report, F&& f) {
  last_error.clear();
  if (report) *report = nullptr;
  try {
    ain::api::CmdResult r = f();
    if (report) *report = dup(render(r.report, o));
    return r.status == 0 ? AIN_OK : AIN_DEFECTS;
  } catch (const ain::api::InputError& e) {
    last_error = e.what();
    if (report) *report = dup(render(error_report(command, e.what()), o));
    return AIN_INPUT_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    if (report) *report = dup(render(error_report(command, e.what()), o));
    return AIN_INTERNAL_ERROR;
  }
}

ain_status need_ws(const ain_workspace* ws) {
  if (ws) return AIN_OK;
  last_error = "null workspace";
  return AIN_INPUT_ERROR;
}

}  // namespace

extern "C" {

void ain_default_options(ain_options* opts) {
  if (!opts) return;
  opts->seed = 0;
  opts->seed_set = 0;
  opts->cap = 0;
  opts->sign_mode = AIN_SIGN_CLASSICAL;
  opts->format = AIN_FORMAT_JSON;
}

const char* ain_version(void) { return "0.1.0"; }

ain_status ain_set_field(const char* field) {
  last_error.clear();
  try {
    ain::api::apply_field(field ? field : "");
    field_set = true;
    return AIN_OK;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AIN_INPUT_ERROR;
  }
}

ain_status ain_workspace_load(const char* json_text, ain_workspace** out) {
  return ain_workspace_load_ex(json_text, nullptr, out);
}

ain_status ain_workspace_load_file(const char* path, ain_workspace** out) {
  return ain_workspace_load_file_ex(path, nullptr, out);
}

ain_status ain_workspace_load_ex(const char* json_text, const ain_options* opts, ain_workspace** out) {
  last_error.clear();
  if (!out || !json_text) {
    last_error = "null argument";
    return AIN_INPUT_ERROR;
  }
  *out = nullptr;
  try {
    // a field named in the document applies unless the caller chose one
    json doc = json::parse(json_text, nullptr, false);
    if (!field_set && doc.is_object() && doc.contains("field") && doc["field"].is_string())
      ain::api::apply_field(doc["field"].get<std::string>());
    auto* w = new ain_workspace{ain::api::load_workspace(
        json_text, opts && opts->seed_set ? std::optional<std::uint64_t>(opts->seed) : std::nullopt,
        opts && opts->cap > 0 ? std::optional<int>(opts->cap) : std::nullopt)};
    *out = w;
    return AIN_OK;
  } catch (const ain::api::InputError& e) {
    last_error = e.what();
    return AIN_INPUT_ERROR;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return AIN_INPUT_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AIN_INTERNAL_ERROR;
  }
}

ain_status ain_workspace_load_file_ex(const char* path, const ain_options* opts, ain_workspace** out) {
  last_error.clear();
  std::ifstream in(path ? path : "");
  if (!in) {
    last_error = std::string("cannot read '") + (path ? path : "") + "'";
    return AIN_INPUT_ERROR;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ain_workspace_load_ex(ss.str().c_str(), opts, out);
}

void ain_workspace_free(ain_workspace* ws) { delete ws; }

const char* ain_last_error(void) { return last_error.c_str(); }

ain_status ain_cmd_validate(ain_workspace* ws, const ain_options* opts, char** report) {
  if (need_ws(ws)) return AIN_INPUT_ERROR;
  return guarded("validate", opts, report, [&] {
    ain::api::Trace t;
    return ain::api::cmd_validate(ws->ws, convert(opts, ws), t);
  });
}

ain_status ain_cmd_fill_horn(ain_workspace* ws, const char* simplex_id, int p, const ain_options* opts,
                             char** report) {
  if (need_ws(ws)) return AIN_INPUT_ERROR;
  return guarded("fill-horn", opts, report, [&] {
    ain::api::Trace t;
    return ain::api::cmd_fill_horn(ws->ws, simplex_id ? simplex_id : "", p, convert(opts, ws), t);
  });
}

ain_status ain_cmd_compare(ain_workspace* ws, const char* big_simplex_id, const ain_options* opts, char** report) {
  if (need_ws(ws)) return AIN_INPUT_ERROR;
  return guarded("compare", opts, report, [&] {
    ain::api::Trace t;
    return ain::api::cmd_compare(ws->ws, big_simplex_id ? big_simplex_id : "", convert(opts, ws), t);
  });
}

ain_status ain_cmd_cube(int m, const ain_options* opts, char** report) {
  return guarded("cube", opts, report, [&] {
    ain::api::Trace t;
    return ain::api::cmd_cube(m, convert(opts, nullptr), t);
  });
}

ain_status ain_cmd_dk_roundtrip(ain_workspace* ws, const char* complex_id, const ain_options* opts, char** report) {
  if (need_ws(ws)) return AIN_INPUT_ERROR;
  return guarded("dk-roundtrip", opts, report, [&] {
    ain::api::Trace t;
    return ain::api::cmd_dk_roundtrip(ws->ws, complex_id ? complex_id : "", convert(opts, ws), t);
  });
}

ain_status ain_cmd_stable(ain_workspace* ws, const char* category_id, int trials, const ain_options* opts,
                          char** report) {
  if (need_ws(ws)) return AIN_INPUT_ERROR;
  return guarded("stable", opts, report, [&] {
    ain::api::Trace t;
    return ain::api::cmd_stable(ws->ws, category_id ? category_id : "", trials, convert(opts, ws), t);
  });
}

ain_status ain_cmd_self_test(const ain_options* opts, char** report) {
  return guarded("self-test", opts, report, [&] { return ain::api::cmd_self_test(convert(opts, nullptr)); });
}

void ain_string_free(char* s) { std::free(s); }

}  // extern "C"
