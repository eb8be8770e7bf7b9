// hmom: command-line front end over the C interface.
//
// Exit codes: 0 pass, 1 mathematical failure, 2 usage or input error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hmom/hmom.h"

using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  ApiError(hmom_status s, const std::string& m) : std::runtime_error(m), status(s) {}
  hmom_status status;
};

int exit_code_for(hmom_status s) {
  switch (s) {
    case HMOM_OK: return kPass;
    case HMOM_ERR_PARSE:
    case HMOM_ERR_SHAPE:
    case HMOM_ERR_ARGUMENT:
    case HMOM_ERR_RANGE:
    case HMOM_ERR_UNKNOWN_SUITE: return kUsage;
    default: return kFail;
  }
}

void check(hmom_status s) {
  if (s != HMOM_OK) throw ApiError(s, hmom_last_error());
}

struct Sequence {
  hmom_sequence* p = nullptr;
  Sequence() = default;
  Sequence(const Sequence&) = delete;
  Sequence& operator=(const Sequence&) = delete;
  ~Sequence() { hmom_sequence_free(p); }
};

json take_json(char* s) {
  json j = json::parse(s);
  hmom_string_free(s);
  return j;
}

std::string take_string(char* s) {
  std::string out(s);
  hmom_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct TolFlags {
  std::optional<double> herm, psd, rank, range;

  // Flags win over HMOM_TOL_* which win over the document and built-in defaults.
  void resolve() {
    auto env = [](const char* name, std::optional<double>& slot) {
      if (slot) return;
      const char* v = std::getenv(name);
      if (!v || !*v) return;
      try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used != std::string(v).size()) throw std::invalid_argument(v);
        slot = x;
      } catch (const std::exception&) {
        throw UsageError(std::string("invalid value in ") + name);
      }
    };
    env("HMOM_TOL_HERM", herm);
    env("HMOM_TOL_PSD", psd);
    env("HMOM_TOL_RANK", rank);
    env("HMOM_TOL_RANGE", range);
  }

  hmom_tolerances apply(hmom_tolerances t) const {
    if (herm) t.herm = *herm;
    if (psd) t.psd = *psd;
    if (rank) t.rank = *rank;
    if (range) t.range = *range;
    return t;
  }

  void apply(hmom_sequence* seq) const {
    hmom_tolerances t;
    check(hmom_sequence_get_tolerances(seq, &t));
    t = apply(t);
    check(hmom_sequence_set_tolerances(seq, &t));
  }

  hmom_tolerances standalone() const {
    hmom_tolerances t;
    hmom_default_tolerances(&t);
    return apply(t);
  }
};

json tol_json(const hmom_tolerances& t) {
  return json{{"tol_herm", t.herm}, {"tol_psd", t.psd}, {"tol_rank", t.rank}, {"tol_range", t.range}};
}

class Envelope {
 public:
  Envelope(std::string command, std::vector<std::string> argv)
      : start_(std::chrono::steady_clock::now()) {
    j_["command"] = std::move(command);
    j_["argv"] = std::move(argv);
    j_["input_digest"] = nullptr;
    j_["tolerances"] = nullptr;
    j_["verdicts"] = json::object();
    j_["residuals"] = json::object();
    j_["data"] = json::object();
    j_["status"] = "fail";
    j_["error"] = nullptr;
  }

  json& operator[](const char* k) { return j_[k]; }

  void merge(const json& fragment) {
    for (const char* k : {"verdicts", "residuals", "data"})
      if (fragment.contains(k)) j_[k] = fragment[k];
    j_["status"] = fragment.value("status", "fail");
  }

  void fail(hmom_status s, const std::string& msg) {
    j_["status"] = "fail";
    j_["error"] = json{{"code", hmom_status_name(s)}, {"message", msg}};
  }

  void print(std::ostream& os) {
    j_["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    os << j_.dump(2) << "\n";
  }

  bool passed() const { return j_["status"] == "pass"; }

 private:
  json j_;
  std::chrono::steady_clock::time_point start_;
};

void load(const std::string& path, const TolFlags& tf, Sequence& seq, Envelope& env) {
  std::string text = read_file(path);
  env["input_digest"] = fnv1a64(text);
  check(hmom_sequence_parse(text.c_str(), nullptr, &seq.p));
  tf.apply(seq.p);
  hmom_tolerances t;
  check(hmom_sequence_get_tolerances(seq.p, &t));
  env["tolerances"] = tol_json(t);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"Truncated matricial Hausdorff moment sequences on [alpha, beta]"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(hmom_version()));

  TolFlags tf;
  app.add_option("--tol-herm", tf.herm, "Relative Hermiticity bound (env HMOM_TOL_HERM)");
  app.add_option("--tol-psd", tf.psd, "Relative eigenvalue floor (env HMOM_TOL_PSD)");
  app.add_option("--tol-rank", tf.rank, "Relative singular value cutoff per dimension (env HMOM_TOL_RANK)");
  app.add_option("--tol-range", tf.range, "Relative range-inclusion bound (env HMOM_TOL_RANGE)");

  std::string file, require = "Fnnd", mode = "central", kfile, output, suite = "all";
  int m_index = -1, steps = 1, q = 2, m = 4, random_n = 0;
  double alpha = 0.0, beta = 1.0;
  std::uint64_t seed = 1;
  bool pd = false;

  auto* check_cmd = app.add_subcommand("check", "Class membership verdicts");
  check_cmd->add_option("file", file, "Sequence document")->required();
  check_cmd->add_option("--require", require, "Class deciding the exit status")
      ->check(CLI::IsMember({"Hnnd", "Hpd", "Hnnd_ext", "Fnnd", "Fpd", "Knnd", "Knnd_ext", "Lnnd",
                             "Lnnd_ext"}));

  auto* interval_cmd = app.add_subcommand("interval", "Interval of admissible next moments");
  interval_cmd->add_option("file", file, "Sequence document")->required();
  interval_cmd->add_option("--m", m_index, "Index of the interval (default: last)");

  auto* extend_cmd = app.add_subcommand("extend", "Append moments inside the interval");
  extend_cmd->add_option("file", file, "Sequence document")->required();
  extend_cmd->add_option("--mode", mode, "Extension mode")
      ->check(CLI::IsMember({"lower", "upper", "central", "ball", "explicit"}));
  extend_cmd->add_option("--steps", steps, "Number of appended moments")->check(CLI::PositiveNumber);
  extend_cmd->add_option("--k-file", kfile, "Contraction(s) for ball, candidates for explicit");
  extend_cmd->add_option("-o,--output", output, "Write the document here and print a report");

  auto* random_cmd = app.add_subcommand("random", "Random [alpha,beta]-Hausdorff sequence");
  auto* verify_cmd = app.add_subcommand("verify", "Run identity verification suites");
  for (auto* c : {random_cmd, verify_cmd}) {
    c->add_option("--q", q, "Block size")->check(CLI::PositiveNumber);
    c->add_option("--alpha", alpha, "Left end of the interval");
    c->add_option("--beta", beta, "Right end of the interval");
    c->add_option("--m", m, "Highest moment index")->check(CLI::NonNegativeNumber);
    c->add_option("--seed", seed, "Generator seed");
    c->add_flag("--pd", pd, "Generate strictly inside every interval");
  }
  random_cmd->add_option("-o,--output", output, "Write the document here and print a report");
  verify_cmd->add_option("file", file, "Sequence document");
  verify_cmd->add_option("--random", random_n, "Verify this many generated sequences instead")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--suite", suite,
                         "parallel, recursion, reflection, ranges, ordering, hankel-identities or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  Envelope env(command, args);
  try {
    tf.resolve();
    if (command == "check") {
      Sequence s;
      load(file, tf, s, env);
      char* rep = nullptr;
      int ok = 0;
      check(hmom_check(s.p, require.c_str(), &rep, &ok));
      env.merge(take_json(rep));
    } else if (command == "interval") {
      Sequence s;
      load(file, tf, s, env);
      char* rep = nullptr;
      check(hmom_interval(s.p, m_index, &rep));
      env.merge(take_json(rep));
    } else if (command == "extend") {
      Sequence s, out;
      load(file, tf, s, env);
      std::string kjson = kfile.empty() ? std::string() : read_file(kfile);
      if ((mode == "ball" || mode == "explicit") && kjson.empty())
        throw UsageError("--mode " + mode + " needs --k-file");
      check(hmom_extend_json(s.p, mode.c_str(), steps, kjson.empty() ? nullptr : kjson.c_str(), &out.p));
      char* doc = nullptr;
      check(hmom_sequence_serialize(out.p, &doc));
      std::string text = take_string(doc);
      if (output.empty()) {
        std::cout << text;
        return kPass;
      }
      write_file(output, text);
      env["status"] = "pass";
      env["data"] = json{{"mode", mode},
                         {"appended", hmom_sequence_last_index(out.p) - hmom_sequence_last_index(s.p)},
                         {"m", hmom_sequence_last_index(out.p)},
                         {"output", output},
                         {"output_digest", fnv1a64(text)}};
    } else if (command == "random") {
      Sequence s;
      hmom_tolerances t = tf.standalone();
      check(hmom_random(q, alpha, beta, m, seed, pd ? 1 : 0, &t, &s.p));
      char* doc = nullptr;
      check(hmom_sequence_serialize(s.p, &doc));
      std::string text = take_string(doc);
      if (output.empty()) {
        std::cout << text;
        return kPass;
      }
      write_file(output, text);
      env["tolerances"] = tol_json(t);
      env["input_digest"] = fnv1a64(text);
      env["status"] = "pass";
      env["data"] = json{{"q", q}, {"alpha", alpha}, {"beta", beta}, {"m", m},
                         {"seed", seed}, {"pd", pd}, {"output", output}};
    } else if (command == "verify") {
      if (random_n == 0 && file.empty()) throw UsageError("verify needs a file or --random N");
      if (random_n > 0 && !file.empty()) throw UsageError("give either a file or --random, not both");
      if (random_n == 0) {
        Sequence s;
        load(file, tf, s, env);
        char* rep = nullptr;
        int ok = 0;
        check(hmom_verify(s.p, suite.c_str(), &rep, &ok));
        env.merge(take_json(rep));
      } else {
        hmom_tolerances t = tf.standalone();
        env["tolerances"] = tol_json(t);
        json instances = json::array();
        json worst = json::object();
        bool all_ok = true;
        std::string digests;
        for (int i = 0; i < random_n; ++i) {
          Sequence s;
          std::uint64_t sd = seed + static_cast<std::uint64_t>(i);
          check(hmom_random(q, alpha, beta, m, sd, pd ? 1 : 0, &t, &s.p));
          char* doc = nullptr;
          check(hmom_sequence_serialize(s.p, &doc));
          digests += take_string(doc);
          char* rep = nullptr;
          int ok = 0;
          check(hmom_verify(s.p, suite.c_str(), &rep, &ok));
          json r = take_json(rep);
          all_ok = all_ok && ok;
          double inst_max = 0.0;
          for (auto& [name, sr] : r["residuals"].items()) {
            double mx = sr["max"].get<double>();
            inst_max = std::max(inst_max, mx);
            auto& w = worst[name];
            if (w.is_null()) w = json{{"max", mx}, {"passed", true}, {"worst_seed", sd}};
            if (mx > w["max"].get<double>()) {
              w["max"] = mx;
              w["worst_seed"] = sd;
            }
            if (!sr["passed"].get<bool>()) w["passed"] = false;
          }
          instances.push_back(json{{"seed", sd}, {"status", ok ? "pass" : "fail"}, {"max_residual", inst_max}});
        }
        env["input_digest"] = fnv1a64(digests);
        env["residuals"] = worst;
        env["data"] = json{{"q", q}, {"alpha", alpha}, {"beta", beta}, {"m", m}, {"pd", pd},
                           {"instances", instances}};
        env["status"] = all_ok ? "pass" : "fail";
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "hmom: " << e.what() << "\n";
    return kUsage;
  } catch (const ApiError& e) {
    std::cerr << "hmom: " << hmom_status_name(e.status) << ": " << e.what() << "\n";
    int code = exit_code_for(e.status);
    if (code == kUsage) return kUsage;
    env.fail(e.status, e.what());
    env.print(std::cout);
    return code;
  } catch (const std::exception& e) {
    std::cerr << "hmom: " << e.what() << "\n";
    return kFail;
  }
  env.print(std::cout);
  return env.passed() ? kPass : kFail;
}
