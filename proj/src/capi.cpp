#include <crformal/crformal.h>
#include <crformal/runner.hpp>
#include <crformal/verify.hpp>

#include <cstdlib>
#include <cstring>
#include <new>

struct crformal_document {
  crformal::Document doc;
};

struct crformal_report {
  std::string json;
  std::string summary;
  std::size_t falsified;
  std::size_t errors;
};

namespace {

thread_local std::string g_error;
thread_local int g_line = 0;
thread_local int g_column = 0;

void clear_error() {
  g_error.clear();
  g_line = g_column = 0;
}

int record(int code, const std::string& message) {
  g_error = message;
  return code;
}

/// Runs `f`, translating exceptions into return codes.
template <typename F>
int guarded(F&& f) {
  clear_error();
  try {
    f();
    return CRFORMAL_OK;
  } catch (const crformal::ParseError& e) {
    g_line = e.line();
    g_column = e.column();
    return record(static_cast<int>(e.code()), e.what());
  } catch (const crformal::Error& e) {
    return record(static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(CRFORMAL_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(CRFORMAL_E_INTERNAL, e.what());
  }
}

crformal::Overrides overrides_of(const crformal_options* o) {
  crformal::Overrides ov;
  if (!o) return ov;
  if (o->degree >= 0) ov.degree = o->degree;
  if (o->convention == CRFORMAL_CONVENTION_2I) ov.convention = crformal::Convention::TwoI;
  if (o->convention == CRFORMAL_CONVENTION_I) ov.convention = crformal::Convention::I;
  if (o->has_seed) ov.seed = o->seed;
  return ov;
}

int check_options(const crformal_options* o) {
  if (o && (o->degree > 60 || o->convention < 0 || o->convention > CRFORMAL_CONVENTION_I)) {
    return record(CRFORMAL_E_INVALID_ARGUMENT, "degree must be at most 60 and convention one of the constants");
  }
  return CRFORMAL_OK;
}

crformal_report* wrap(crformal::Report&& r) {
  return new crformal_report{r.json_text(), std::move(r.summary), r.falsified, r.errors};
}

}  // namespace

extern "C" {

const char* crformal_version(void) { return crformal::kToolVersion; }
const char* crformal_report_schema(void) { return crformal::kReportSchema; }
const char* crformal_grammar(void) { return crformal::document_grammar().c_str(); }

const char* crformal_error_name(int code) {
  if (code == CRFORMAL_OK) return "Ok";
  if (code == CRFORMAL_E_NULL_ARGUMENT) return "NullArgument";
  if (code == CRFORMAL_E_INTERNAL) return "Internal";
  if (code >= CRFORMAL_E_ARITY_MISMATCH && code <= CRFORMAL_E_NON_GAUSSIAN_LITERAL) {
    return crformal::error_code_name(static_cast<crformal::ErrorCode>(code));
  }
  return "Unknown";
}

const char* crformal_last_error(void) { return g_error.c_str(); }
int crformal_last_error_line(void) { return g_line; }
int crformal_last_error_column(void) { return g_column; }

void crformal_options_init(crformal_options* options) {
  if (!options) return;
  options->degree = -1;
  options->convention = CRFORMAL_CONVENTION_DEFAULT;
  options->has_seed = 0;
  options->seed = 0;
}

int crformal_document_parse(const char* text, size_t length, crformal_document** out) {
  if (!text || !out) return record(CRFORMAL_E_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new crformal_document{crformal::parse_document(std::string(text, length))}; });
}

int crformal_document_print(const crformal_document* doc, char** out) {
  if (!doc || !out) return record(CRFORMAL_E_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const std::string text = crformal::print_document(doc->doc);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void crformal_document_free(crformal_document* doc) { delete doc; }

int crformal_run_text(const char* text, size_t length, int tasks, const crformal_options* options,
                      crformal_report** out) {
  if (!text || !out) return record(CRFORMAL_E_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  if (tasks < CRFORMAL_TASKS_ALL || tasks > CRFORMAL_TASKS_EXAMPLES) {
    return record(CRFORMAL_E_INVALID_ARGUMENT, "unknown task selector");
  }
  if (const int rc = check_options(options)) return rc;
  return guarded([&] {
    *out = wrap(crformal::run_document_text(std::string(text, length), overrides_of(options),
                                            static_cast<crformal::TaskFilter>(tasks)));
  });
}

int crformal_run_suites(const char* const* names, size_t count, const crformal_options* options,
                        crformal_report** out) {
  if (!out || (count > 0 && !names)) return record(CRFORMAL_E_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  if (const int rc = check_options(options)) return rc;
  return guarded([&] {
    std::vector<std::string> list;
    for (size_t k = 0; k < count; ++k) {
      if (!names[k]) throw crformal::Error(crformal::ErrorCode::InvalidArgument, "null suite name");
      list.emplace_back(names[k]);
    }
    if (list.empty()) list = crformal::suite_names();
    *out = wrap(crformal::run_suites(list, overrides_of(options)));
  });
}

int crformal_run_examples(const crformal_options* options, crformal_report** out) {
  if (!out) return record(CRFORMAL_E_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  if (const int rc = check_options(options)) return rc;
  return guarded([&] { *out = wrap(crformal::run_examples(overrides_of(options))); });
}

const char* crformal_report_json(const crformal_report* report) { return report ? report->json.c_str() : ""; }
const char* crformal_report_summary(const crformal_report* report) { return report ? report->summary.c_str() : ""; }
int crformal_report_ok(const crformal_report* report) {
  return report && report->falsified == 0 && report->errors == 0 ? 1 : 0;
}
size_t crformal_report_falsified(const crformal_report* report) { return report ? report->falsified : 0; }
size_t crformal_report_errors(const crformal_report* report) { return report ? report->errors : 0; }
void crformal_report_free(crformal_report* report) { delete report; }
void crformal_string_free(char* s) { std::free(s); }

}  // extern "C"
