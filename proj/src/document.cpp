#include "hmom/document.hpp"

#include <cmath>

#include "json_matrix.hpp"

namespace hmom {

namespace detail {

json matrix_to_json(const CMatrix& a) {
  json rows = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < a.cols(); ++k) row.push_back(json::array({a(i, k).real(), a(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw Error(ErrorKind::parse, where + ": expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorKind::parse, where + ": non-finite number");
  return x;
}

}  // namespace

CMatrix matrix_from_json(const json& j, int q, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != q)
    throw Error(ErrorKind::shape, where + ": expected " + std::to_string(q) + " rows");
  CMatrix a(q, q);
  for (int r = 0; r < q; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != q)
      throw Error(ErrorKind::shape, where + ": row " + std::to_string(r) + " needs " +
                                        std::to_string(q) + " entries");
    for (int c = 0; c < q; ++c) {
      const json& z = row[static_cast<std::size_t>(c)];
      std::string at = where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (z.is_number()) {
        a(r, c) = Complex(finite_number(z, at), 0.0);
      } else if (z.is_array() && z.size() == 2) {
        a(r, c) = Complex(finite_number(z[0], at), finite_number(z[1], at));
      } else {
        throw Error(ErrorKind::parse, at + ": expected [re, im]");
      }
    }
  }
  return a;
}

json tolerances_to_json(const Tolerances& t) {
  return json{{"tol_herm", t.herm}, {"tol_psd", t.psd}, {"tol_rank", t.rank}, {"tol_range", t.range}};
}

Tolerances tolerances_from_json(const json& j, Tolerances base) {
  if (!j.is_object()) throw Error(ErrorKind::parse, "tolerances must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    double v = finite_number(it.value(), "tolerances." + it.key());
    if (it.key() == "tol_herm") base.herm = v;
    else if (it.key() == "tol_psd") base.psd = v;
    else if (it.key() == "tol_rank") base.rank = v;
    else if (it.key() == "tol_range") base.range = v;
    else throw Error(ErrorKind::parse, "unknown tolerance '" + it.key() + "'");
  }
  base.validate();
  return base;
}

}  // namespace detail

using detail::json;

namespace {

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw Error(ErrorKind::parse, std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

MomentSequence parse_sequence_document(const std::string& text) {
  return parse_sequence_document(text, Tolerances{});
}

MomentSequence parse_sequence_document(const std::string& text, const Tolerances& defaults) {
  json doc = parse_text(text);
  if (!doc.is_object()) throw Error(ErrorKind::parse, "document must be a JSON object");
  const json& jq = field(doc, "q");
  if (!jq.is_number_integer() || jq.get<long long>() < 1 || jq.get<long long>() > 4096)
    throw Error(ErrorKind::shape, "q must be a positive integer");
  int q = jq.get<int>();
  auto number = [&](const char* key) {
    const json& v = field(doc, key);
    if (!v.is_number()) throw Error(ErrorKind::parse, std::string(key) + " must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) throw Error(ErrorKind::parse, std::string(key) + " is not finite");
    return x;
  };
  double alpha = number("alpha");
  double beta = number("beta");
  const json& jm = field(doc, "moments");
  if (!jm.is_array() || jm.empty()) throw Error(ErrorKind::shape, "moments must be a non-empty array");
  std::vector<CMatrix> moments;
  for (std::size_t j = 0; j < jm.size(); ++j)
    moments.push_back(detail::matrix_from_json(jm[j], q, "moments[" + std::to_string(j) + "]"));
  Tolerances tol = defaults;
  if (auto it = doc.find("tolerances"); it != doc.end())
    tol = detail::tolerances_from_json(*it, defaults);
  try {
    return MomentSequence(q, alpha, beta, std::move(moments), tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::argument) throw Error(ErrorKind::shape, e.what());
    throw;
  }
}

std::string serialize_sequence(const MomentSequence& seq) {
  json doc;
  doc["q"] = seq.q();
  doc["alpha"] = seq.alpha();
  doc["beta"] = seq.beta();
  json ms = json::array();
  for (const auto& m : seq.moments()) ms.push_back(detail::matrix_to_json(m));
  doc["moments"] = std::move(ms);
  doc["tolerances"] = detail::tolerances_to_json(seq.tol());
  return doc.dump(2) + "\n";
}

std::vector<CMatrix> parse_matrix_list(const std::string& text, int q) {
  json doc = parse_text(text);
  if (doc.is_object()) doc = field(doc, "matrices");
  if (!doc.is_array() || doc.empty()) throw Error(ErrorKind::parse, "expected a matrix or a list of matrices");
  // A single matrix is an array of rows whose first entry is an [re, im] pair.
  auto is_entry = [](const json& z) { return z.is_array() && z.size() == 2 && z[0].is_number(); };
  bool single = doc[0].is_array() && !doc[0].empty() && is_entry(doc[0][0]);
  std::vector<CMatrix> out;
  if (single) {
    out.push_back(detail::matrix_from_json(doc, q, "matrix"));
  } else {
    for (std::size_t i = 0; i < doc.size(); ++i)
      out.push_back(detail::matrix_from_json(doc[i], q, "matrices[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace hmom
