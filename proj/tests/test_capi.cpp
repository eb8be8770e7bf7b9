#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmom/hmom.h"

using nlohmann::json;

namespace {

json take(char* s) {
  json j = json::parse(s);
  hmom_string_free(s);
  return j;
}

hmom_sequence* scalar(std::vector<double> v, double al = 0.0, double be = 1.0) {
  std::vector<double> e;
  for (double x : v) e.insert(e.end(), {x, 0.0});
  hmom_sequence* s = nullptr;
  REQUIRE(hmom_sequence_create(1, al, be, static_cast<int>(v.size()), e.data(), nullptr, &s) == HMOM_OK);
  return s;
}

}  // namespace

TEST_CASE("handles and accessors") {
  hmom_sequence* s = scalar({1, 0.5});
  CHECK(hmom_sequence_q(s) == 1);
  CHECK(hmom_sequence_last_index(s) == 1);
  CHECK(hmom_sequence_alpha(s) == 0.0);
  CHECK(hmom_sequence_beta(s) == 1.0);
  double z[2];
  CHECK(hmom_sequence_moment(s, 1, z) == HMOM_OK);
  CHECK(z[0] == 0.5);
  CHECK(hmom_sequence_moment(s, 5, z) == HMOM_ERR_RANGE);
  CHECK(std::strlen(hmom_last_error()) > 0);
  hmom_tolerances t;
  CHECK(hmom_sequence_get_tolerances(s, &t) == HMOM_OK);
  CHECK(t.psd == 1e-9);
  t.psd = 2.0;
  CHECK(hmom_sequence_set_tolerances(s, &t) == HMOM_ERR_ARGUMENT);
  char* doc = nullptr;
  CHECK(hmom_sequence_serialize(s, &doc) == HMOM_OK);
  hmom_sequence* back = nullptr;
  CHECK(hmom_sequence_parse(doc, nullptr, &back) == HMOM_OK);
  hmom_string_free(doc);
  CHECK(hmom_sequence_last_index(back) == 1);
  hmom_sequence_free(back);
  hmom_sequence_free(s);
  hmom_sequence_free(nullptr);
  CHECK(std::string(hmom_version()).size() > 0);
  CHECK(std::string(hmom_status_name(HMOM_ERR_PARSE)) == "parse_error");
}

TEST_CASE("error codes") {
  hmom_sequence* s = nullptr;
  CHECK(hmom_sequence_parse("{oops", nullptr, &s) == HMOM_ERR_PARSE);
  CHECK(s == nullptr);
  double e[2] = {1, 0};
  CHECK(hmom_sequence_create(1, 1.0, 0.0, 1, e, nullptr, &s) == HMOM_ERR_ARGUMENT);
  CHECK(hmom_sequence_create(0, 0.0, 1.0, 1, e, nullptr, &s) == HMOM_ERR_SHAPE);
  CHECK(hmom_sequence_parse(nullptr, nullptr, &s) == HMOM_ERR_ARGUMENT);
  hmom_sequence* bad = scalar({4, 2, 4});
  char* rep = nullptr;
  CHECK(hmom_interval(bad, -1, &rep) == HMOM_ERR_PRECONDITION);
  CHECK(hmom_verify(bad, "bogus", &rep, nullptr) == HMOM_ERR_UNKNOWN_SUITE);
  hmom_sequence* out = nullptr;
  CHECK(hmom_extend(bad, "central", 1, nullptr, 0, &out) == HMOM_ERR_PRECONDITION);
  CHECK(hmom_extend(bad, "diagonal", 1, nullptr, 0, &out) == HMOM_ERR_ARGUMENT);
  hmom_sequence_free(bad);
}

TEST_CASE("check, interval and membership reports") {
  hmom_sequence* e = scalar({4, 2, 4});
  char* rep = nullptr;
  int ok = -1;
  REQUIRE(hmom_check(e, "Fnnd", &rep, &ok) == HMOM_OK);
  json r = take(rep);
  CHECK(ok == 0);
  CHECK(r["verdicts"]["Fnnd"]["status"] == "outside");
  CHECK(r["verdicts"]["Fnnd"]["witness_eig"].get<double>() == doctest::Approx(-2.0));
  CHECK(r["verdicts"]["Knnd_ext"]["status"] == "inside");
  CHECK(r["data"]["min_eigenvalues"]["Hab_0"].get<double>() == doctest::Approx(-2.0));
  REQUIRE(hmom_check(e, "Knnd_ext", &rep, &ok) == HMOM_OK);
  hmom_string_free(rep);
  CHECK(ok == 1);
  CHECK(hmom_check(e, "Znnd", &rep, &ok) == HMOM_ERR_ARGUMENT);
  hmom_sequence_free(e);

  hmom_sequence* s = scalar({1, 0.5});
  REQUIRE(hmom_interval(s, -1, &rep) == HMOM_OK);
  json iv = take(rep);
  CHECK(iv["data"]["a"][0][0][0].get<double>() == doctest::Approx(0.25));
  CHECK(iv["data"]["b"][0][0][0].get<double>() == doctest::Approx(0.5));
  CHECK(iv["data"]["c"][0][0][0].get<double>() == doctest::Approx(0.375));
  CHECK(iv["data"]["d"][0][0][0].get<double>() == doctest::Approx(0.25));
  CHECK(iv["data"]["d_rank"] == 1);
  REQUIRE(hmom_interval(s, 0, &rep) == HMOM_OK);
  json i0 = take(rep);
  CHECK(i0["data"]["a"][0][0][0].get<double>() == 0.0);
  CHECK(i0["data"]["b"][0][0][0].get<double>() == 1.0);
  int st = -1;
  double cand[2] = {0.25, 0.0};
  REQUIRE(hmom_membership(s, cand, nullptr, &st) == HMOM_OK);
  CHECK(st == 1);
  cand[0] = 0.6;
  REQUIRE(hmom_membership(s, cand, nullptr, &st) == HMOM_OK);
  CHECK(st == 2);
  hmom_sequence_free(s);
}

TEST_CASE("extend, random and verify through the C surface") {
  hmom_sequence* one = scalar({1});
  hmom_sequence* c = nullptr;
  REQUIRE(hmom_extend(one, "central", 3, nullptr, 0, &c) == HMOM_OK);
  double z[2];
  hmom_sequence_moment(c, 3, z);
  CHECK(z[0] == doctest::Approx(5.0 / 16));
  double k[2] = {0.5, 0.0};
  hmom_sequence* b = nullptr;
  REQUIRE(hmom_extend(one, "ball", 3, k, 1, &b) == HMOM_OK);
  hmom_sequence_moment(b, 3, z);
  CHECK(z[0] == doctest::Approx(5.0 / 16));
  hmom_sequence* j = nullptr;
  REQUIRE(hmom_extend_json(one, "explicit", 0, "[[[[0.7,0]]],[[[0.6,0]]]]", &j) == HMOM_OK);
  CHECK(hmom_sequence_last_index(j) == 2);
  hmom_sequence* bad = nullptr;
  CHECK(hmom_extend_json(one, "explicit", 0, "[[[[1.7,0]]]]", &bad) == HMOM_ERR_OUTSIDE);
  CHECK(hmom_extend_json(one, "explicit", 0, "[[[[x", &bad) == HMOM_ERR_PARSE);

  hmom_sequence* r1 = nullptr;
  hmom_sequence* r2 = nullptr;
  REQUIRE(hmom_random(2, 0.0, 1.0, 4, 7, 1, nullptr, &r1) == HMOM_OK);
  REQUIRE(hmom_random(2, 0.0, 1.0, 4, 7, 1, nullptr, &r2) == HMOM_OK);
  char* d1 = nullptr;
  char* d2 = nullptr;
  hmom_sequence_serialize(r1, &d1);
  hmom_sequence_serialize(r2, &d2);
  CHECK(std::string(d1) == std::string(d2));
  hmom_string_free(d1);
  hmom_string_free(d2);
  char* rep = nullptr;
  int passed = 0;
  REQUIRE(hmom_verify(r1, "all", &rep, &passed) == HMOM_OK);
  json v = take(rep);
  CHECK(passed == 1);
  CHECK(v["residuals"].size() == 6);
  REQUIRE(hmom_degenerate_tail(c, &rep) == HMOM_OK);
  CHECK(take(rep)["data"]["m0"].is_null());
  for (auto* p : {one, c, b, j, r1, r2}) hmom_sequence_free(p);
}
