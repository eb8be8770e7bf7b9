#include "hmom/hmom.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "hmom/document.hpp"
#include "report.hpp"

struct hmom_sequence {
  hmom::MomentSequence seq;
};

namespace {

thread_local std::string last_error;

hmom_status code_of(hmom::ErrorKind k) {
  switch (k) {
    case hmom::ErrorKind::parse: return HMOM_ERR_PARSE;
    case hmom::ErrorKind::shape: return HMOM_ERR_SHAPE;
    case hmom::ErrorKind::argument: return HMOM_ERR_ARGUMENT;
    case hmom::ErrorKind::range: return HMOM_ERR_RANGE;
    case hmom::ErrorKind::precondition: return HMOM_ERR_PRECONDITION;
    case hmom::ErrorKind::outside: return HMOM_ERR_OUTSIDE;
    case hmom::ErrorKind::inconsistent: return HMOM_ERR_INCONSISTENT;
  }
  return HMOM_ERR_INTERNAL;
}

template <class F>
hmom_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return HMOM_OK;
  } catch (const hmom::Error& e) {
    last_error = e.what();
    return code_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return HMOM_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) throw hmom::Error(hmom::ErrorKind::argument, std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hmom::Tolerances to_tol(const hmom_tolerances* t) {
  hmom::Tolerances out;
  if (t) out = hmom::Tolerances{t->herm, t->psd, t->rank, t->range};
  out.validate();
  return out;
}

hmom::CMatrix read_matrix(const double* p, int q) {
  hmom::CMatrix a(q, q);
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < q; ++c) {
      const double* z = p + 2 * (r * q + c);
      a(r, c) = hmom::Complex(z[0], z[1]);
    }
  return a;
}

void write_matrix(const hmom::CMatrix& a, double* p) {
  for (hmom::Index r = 0; r < a.rows(); ++r)
    for (hmom::Index c = 0; c < a.cols(); ++c) {
      double* z = p + 2 * (r * a.cols() + c);
      z[0] = a(r, c).real();
      z[1] = a(r, c).imag();
    }
}

void emit(const hmom::detail::json& j, char** out) {
  need(out, "report_out");
  *out = dup_string(j.dump(2));
}

hmom_sequence* wrap(hmom::MomentSequence s) { return new hmom_sequence{std::move(s)}; }

hmom_status extend_impl(const hmom_sequence* seq, const char* mode, int steps,
                        std::vector<hmom::CMatrix> mats, hmom_sequence** out) {
  return guarded([&] {
    need(seq, "seq");
    need(mode, "mode");
    need(out, "out");
    auto m = hmom::parse_mode(mode);
    if (!m) throw hmom::Error(hmom::ErrorKind::argument, std::string("unknown mode '") + mode + "'");
    hmom::ExtensionPolicy p{*m, steps, std::move(mats)};
    *out = wrap(hmom::extend(seq->seq, p));
  });
}

}  // namespace

extern "C" {

const char* hmom_version(void) { return "0.1.0"; }

const char* hmom_status_name(hmom_status s) {
  switch (s) {
    case HMOM_OK: return "ok";
    case HMOM_ERR_PARSE: return "parse_error";
    case HMOM_ERR_SHAPE: return "shape_error";
    case HMOM_ERR_ARGUMENT: return "argument_error";
    case HMOM_ERR_RANGE: return "range_error";
    case HMOM_ERR_PRECONDITION: return "precondition_failed";
    case HMOM_ERR_OUTSIDE: return "outside_interval";
    case HMOM_ERR_INCONSISTENT: return "internal_inconsistency";
    case HMOM_ERR_UNKNOWN_SUITE: return "unknown_suite";
    case HMOM_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* hmom_last_error(void) { return last_error.c_str(); }

void hmom_default_tolerances(hmom_tolerances* out) {
  if (!out) return;
  hmom::Tolerances t;
  *out = hmom_tolerances{t.herm, t.psd, t.rank, t.range};
}

void hmom_string_free(char* s) { std::free(s); }

hmom_status hmom_sequence_create(int q, double alpha, double beta, int count, const double* entries,
                                 const hmom_tolerances* tol, hmom_sequence** out) {
  return guarded([&] {
    need(out, "out");
    need(entries, "entries");
    if (q < 1 || count < 1) throw hmom::Error(hmom::ErrorKind::shape, "q and count must be positive");
    std::vector<hmom::CMatrix> ms;
    for (int j = 0; j < count; ++j) ms.push_back(read_matrix(entries + 2 * q * q * j, q));
    *out = wrap(hmom::MomentSequence(q, alpha, beta, std::move(ms), to_tol(tol)));
  });
}

hmom_status hmom_sequence_parse(const char* json, const hmom_tolerances* defaults, hmom_sequence** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = wrap(hmom::parse_sequence_document(json, to_tol(defaults)));
  });
}

void hmom_sequence_free(hmom_sequence* seq) { delete seq; }

hmom_status hmom_sequence_serialize(const hmom_sequence* seq, char** json_out) {
  return guarded([&] {
    need(seq, "seq");
    need(json_out, "json_out");
    *json_out = dup_string(hmom::serialize_sequence(seq->seq));
  });
}

int hmom_sequence_q(const hmom_sequence* seq) { return seq ? seq->seq.q() : 0; }
int hmom_sequence_last_index(const hmom_sequence* seq) { return seq ? seq->seq.last_index() : -1; }
double hmom_sequence_alpha(const hmom_sequence* seq) { return seq ? seq->seq.alpha() : 0.0; }
double hmom_sequence_beta(const hmom_sequence* seq) { return seq ? seq->seq.beta() : 0.0; }

hmom_status hmom_sequence_moment(const hmom_sequence* seq, int j, double* entries_out) {
  return guarded([&] {
    need(seq, "seq");
    need(entries_out, "entries_out");
    write_matrix(seq->seq[j], entries_out);
  });
}

hmom_status hmom_sequence_get_tolerances(const hmom_sequence* seq, hmom_tolerances* out) {
  return guarded([&] {
    need(seq, "seq");
    need(out, "out");
    const auto& t = seq->seq.tol();
    *out = hmom_tolerances{t.herm, t.psd, t.rank, t.range};
  });
}

hmom_status hmom_sequence_set_tolerances(hmom_sequence* seq, const hmom_tolerances* tol) {
  return guarded([&] {
    need(seq, "seq");
    need(tol, "tol");
    seq->seq = seq->seq.with_tolerances(to_tol(tol));
  });
}

hmom_status hmom_check(const hmom_sequence* seq, const char* require, char** report_out, int* satisfied_out) {
  return guarded([&] {
    need(seq, "seq");
    auto r = hmom::detail::check_report(seq->seq, require ? require : "Fnnd");
    if (satisfied_out) *satisfied_out = r["status"] == "pass";
    emit(r, report_out);
  });
}

hmom_status hmom_interval(const hmom_sequence* seq, int m, char** report_out) {
  return guarded([&] {
    need(seq, "seq");
    emit(hmom::detail::interval_report(seq->seq, m < 0 ? seq->seq.last_index() : m), report_out);
  });
}

hmom_status hmom_membership(const hmom_sequence* seq, const double* candidate, char** report_out,
                            int* status_out) {
  return guarded([&] {
    need(seq, "seq");
    need(candidate, "candidate");
    auto r = hmom::detail::membership_report(seq->seq, read_matrix(candidate, seq->seq.q()));
    if (status_out) {
      auto st = hmom::parse_status(r["verdicts"]["membership"]["status"].get<std::string>());
      *status_out = static_cast<int>(*st);
    }
    if (report_out) emit(r, report_out);
  });
}

hmom_status hmom_verify(const hmom_sequence* seq, const char* suite, char** report_out, int* passed_out) {
  std::vector<hmom::Suite> suites;
  if (suite && std::string(suite) != "all") {
    auto s = hmom::parse_suite(suite);
    if (!s) {
      last_error = std::string("unknown suite '") + suite + "'";
      return HMOM_ERR_UNKNOWN_SUITE;
    }
    suites.push_back(*s);
  } else {
    suites = hmom::all_suites();
  }
  return guarded([&] {
    need(seq, "seq");
    auto r = hmom::detail::verify_report(seq->seq, suites);
    if (passed_out) *passed_out = r["status"] == "pass";
    emit(r, report_out);
  });
}

hmom_status hmom_degenerate_tail(const hmom_sequence* seq, char** report_out) {
  return guarded([&] {
    need(seq, "seq");
    emit(hmom::detail::degenerate_report(seq->seq), report_out);
  });
}

hmom_status hmom_extend(const hmom_sequence* seq, const char* mode, int steps, const double* matrices,
                        int matrix_count, hmom_sequence** out) {
  std::vector<hmom::CMatrix> mats;
  if (seq && matrices)
    for (int i = 0; i < matrix_count; ++i)
      mats.push_back(read_matrix(matrices + 2 * seq->seq.q() * seq->seq.q() * i, seq->seq.q()));
  return extend_impl(seq, mode, steps, std::move(mats), out);
}

hmom_status hmom_extend_json(const hmom_sequence* seq, const char* mode, int steps, const char* matrices_json,
                             hmom_sequence** out) {
  std::vector<hmom::CMatrix> mats;
  hmom_status st = guarded([&] {
    need(seq, "seq");
    if (matrices_json) mats = hmom::parse_matrix_list(matrices_json, seq->seq.q());
  });
  if (st != HMOM_OK) return st;
  return extend_impl(seq, mode, steps, std::move(mats), out);
}

hmom_status hmom_random(int q, double alpha, double beta, int m, uint64_t seed, int pd,
                        const hmom_tolerances* tol, hmom_sequence** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(hmom::random_F(q, alpha, beta, m, seed, pd != 0, to_tol(tol)));
  });
}

}  // extern "C"
