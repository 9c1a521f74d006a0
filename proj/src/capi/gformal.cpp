#include "gformal/gformal.h"

#include <memory>
#include <new>
#include <string>

#include "app/commands.hpp"
#include "common/error.hpp"
#include "grring/ring.hpp"
#include "realize/certificate.hpp"
#include "realize/problem.hpp"

using namespace gformal;

struct gformal_report {
  app::Json json;
  gformal_format format;
  std::string output;
  std::string text[2];
  bool rendered[2] = {false, false};
};

struct gformal_ring {
  grring::RingPresentation ring;
  std::string text;
};

struct gformal_certificate {
  realize::Certificate cert;
};

namespace {

thread_local std::string last_error;

template <typename F>
gformal_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return GFORMAL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<gformal_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GFORMAL_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GFORMAL_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return GFORMAL_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

Rational rational_or_zero(const char* s) { return s ? parse_rational(s) : Rational(0); }

}  // namespace

extern "C" {

const char* gformal_version(void) { return app::tool_version(); }

const char* gformal_status_name(gformal_status status) {
  switch (status) {
    case GFORMAL_OK: return "OK";
    case GFORMAL_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
    case GFORMAL_DIMENSION_MISMATCH: return "DIMENSION_MISMATCH";
    case GFORMAL_DEGREE_OUT_OF_RANGE: return "DEGREE_OUT_OF_RANGE";
    case GFORMAL_NOT_HOMOGENEOUS: return "NOT_HOMOGENEOUS";
    case GFORMAL_UNKNOWN_TARGET: return "UNKNOWN_TARGET";
    case GFORMAL_MALFORMED_CONFIG: return "MALFORMED_CONFIG";
    case GFORMAL_PATTERN_INAPPLICABLE: return "PATTERN_INAPPLICABLE";
    case GFORMAL_INCONSISTENT_INPUT: return "INCONSISTENT_INPUT";
    case GFORMAL_UNSUPPORTED: return "UNSUPPORTED";
    case GFORMAL_INTERNAL: return "INTERNAL";
    case GFORMAL_OUT_OF_MEMORY: return "OUT_OF_MEMORY";
  }
  return "UNKNOWN_STATUS";
}

const char* gformal_last_error(void) { return last_error.c_str(); }

gformal_status gformal_run(const char* config, const char* overrides, gformal_report** out) {
  return guarded([&] {
    need(config, "config");
    need(out, "out");
    *out = nullptr;
    auto cfg = overrides ? app::parse_config(config, overrides) : app::parse_config(config);
    auto report = std::make_unique<gformal_report>();
    report->json = app::run(cfg);
    report->format = cfg.format == app::ReportFormat::Structured ? GFORMAL_FORMAT_STRUCTURED : GFORMAL_FORMAT_HUMAN;
    report->output = cfg.output;
    *out = report.release();
  });
}

const char* gformal_report_text(const gformal_report* report, gformal_format format) {
  if (!report) return nullptr;
  auto* r = const_cast<gformal_report*>(report);
  int i = format == GFORMAL_FORMAT_STRUCTURED ? 1 : 0;
  if (!r->rendered[i]) {
    r->text[i] = app::render(r->json, i ? app::ReportFormat::Structured : app::ReportFormat::Human);
    r->rendered[i] = true;
  }
  return r->text[i].c_str();
}

gformal_format gformal_report_format(const gformal_report* report) {
  return report ? report->format : GFORMAL_FORMAT_HUMAN;
}

const char* gformal_report_output(const gformal_report* report) { return report ? report->output.c_str() : ""; }

void gformal_report_free(gformal_report* report) { delete report; }

gformal_status gformal_ring_named(const char* name, const char* a, const char* b, const char* c, int p, int q,
                                  gformal_ring** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = nullptr;
    grring::RingParams params;
    params.a = rational_or_zero(a);
    params.b = rational_or_zero(b);
    params.c = rational_or_zero(c);
    params.p = p;
    params.q = q;
    auto r = std::make_unique<gformal_ring>();
    r->ring = grring::named_ring(name, params);
    r->text = realize::ring_to_text(r->ring);
    *out = r.release();
  });
}

gformal_status gformal_ring_parse(const char* text, gformal_ring** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = nullptr;
    auto r = std::make_unique<gformal_ring>();
    r->ring = realize::ring_from_text(text);
    r->text = realize::ring_to_text(r->ring);
    *out = r.release();
  });
}

const char* gformal_ring_text(const gformal_ring* ring) { return ring ? ring->text.c_str() : nullptr; }

gformal_status gformal_ring_betti(const gformal_ring* ring, int* betti, size_t capacity, size_t* count) {
  return guarded([&] {
    need(ring, "ring");
    need(count, "count");
    auto b = grring::betti_of_ring(grring::NormalFormTable(ring->ring));
    *count = b.size();
    require(capacity == 0 || betti != nullptr, ErrorCode::InvalidArgument, "betti is NULL");
    for (size_t i = 0; i < b.size() && i < capacity; ++i) betti[i] = b[i];
  });
}

const char* gformal_ring_pattern(const gformal_ring* ring) {
  const char* tag = nullptr;
  guarded([&] {
    need(ring, "ring");
    tag = grring::to_string(grring::pattern_match(grring::NormalFormTable(ring->ring)).tag);
  });
  return tag;
}

void gformal_ring_free(gformal_ring* ring) { delete ring; }

gformal_status gformal_certify(const gformal_ring* ring, gformal_certificate** out) {
  return guarded([&] {
    need(ring, "ring");
    need(out, "out");
    *out = nullptr;
    *out = new gformal_certificate{realize::certify_ring(ring->ring)};
  });
}

const char* gformal_certificate_verdict(const gformal_certificate* cert) {
  return cert ? realize::to_string(cert->cert.verdict) : nullptr;
}

size_t gformal_certificate_step_count(const gformal_certificate* cert) { return cert ? cert->cert.steps.size() : 0; }

const char* gformal_certificate_step_id(const gformal_certificate* cert, size_t index) {
  if (!cert || index >= cert->cert.steps.size()) return nullptr;
  return cert->cert.steps[index].id.c_str();
}

gformal_status gformal_certificate_verify(const gformal_certificate* cert, int trials, uint64_t seed, int* accepted) {
  return guarded([&] {
    need(cert, "cert");
    need(accepted, "accepted");
    require(trials > 0, ErrorCode::InvalidArgument, "trials must be positive");
    *accepted = realize::verify_certificate(cert->cert, trials, seed).accepted ? 1 : 0;
  });
}

gformal_status gformal_certificate_corrupt(const gformal_certificate* cert, size_t index, gformal_certificate** out) {
  return guarded([&] {
    need(cert, "cert");
    need(out, "out");
    *out = nullptr;
    *out = new gformal_certificate{realize::corrupt_step(cert->cert, index)};
  });
}

void gformal_certificate_free(gformal_certificate* cert) { delete cert; }

gformal_status gformal_realize(const gformal_ring* ring, int restarts, uint64_t seed, int* feasible,
                               double* best_residual) {
  return guarded([&] {
    need(ring, "ring");
    need(feasible, "feasible");
    realize::SearchConfig sc;
    sc.restarts = restarts;
    sc.seed = seed;
    sc.validate();
    auto out = realize::search(realize::RealizationProblem::from_ring(ring->ring), sc);
    *feasible = out.status == realize::SearchStatus::FeasibleFound ? 1 : 0;
    if (best_residual) *best_residual = out.best_residual;
  });
}

}  // extern "C"
