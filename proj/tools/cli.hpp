// Copyright 2026 The pidkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The pidkit command line. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 success, 1 verification / decode / construction failure,
// 2 usage, parse or budget error.

#ifndef PIDKIT_TOOLS_CLI_HPP_
#define PIDKIT_TOOLS_CLI_HPP_

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pidkit/pidkit.hpp"

namespace pidkit::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

inline constexpr const char* kBudgetEnv = "PIDKIT_BUDGET";

/// PIDKIT_BUDGET, if set, replaces every default enumeration budget.
inline std::optional<std::uint64_t> env_budget() {
  const char* raw = std::getenv(kBudgetEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::uint64_t v = 0;
  const std::string s(raw);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParseError, std::string(kBudgetEnv) + "=\"" + s + "\" is not a count");
  }
  return v;
}

inline std::uint64_t pick_budget(std::optional<std::uint64_t> flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (auto e = env_budget()) return *e;
  return fallback;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::kParseError, "cannot write " + path);
}

inline Scheme load_scheme(const std::string& path) {
  try {
    return deserialize_scheme(parse_document(read_file(path)));
  } catch (const Error& e) {
    throw Error(e.code() == ErrorCode::kParseError ? e.code() : ErrorCode::kParseError,
                path + ": " + (e.code() == ErrorCode::kParseError ? e.detail() : e.what()));
  }
}

inline std::string render(const Rational& r, bool decimal) {
  return decimal ? to_decimal_string(r) : to_string(r);
}

// ---------------------------------------------------------------- sweep rows

struct SweepRow {
  std::int64_t K = 0;
  std::int64_t M = 0;
  std::int64_t N = 0;
  Rational lower{0};
  Rational upper{0};
  bool exact = false;
  std::string source;  // closed-form | search-certified
};

/// Closed-form bounds, settled by the converse search when the closed forms
/// leave a gap and the search bound meets the best scheme rate.
inline SweepRow sweep_row(std::int64_t k, std::int64_t m, std::int64_t n,
                          const ConverseOptions& opt, bool search) {
  const CapacityReport rep = capacity_report(k, m, n);
  SweepRow row{k, m, n, rep.lower, rep.upper, rep.exact.has_value(), "closed-form"};
  if (!rep.feasible) {
    row.lower = row.upper = Rational(0);
    return row;
  }
  if (row.exact || !search) return row;
  const ConverseCertificate cert = converse_rate(static_cast<std::size_t>(k),
                                                 static_cast<std::size_t>(m),
                                                 static_cast<std::size_t>(n), opt);
  if (cert.rate_bound == rep.lower) {
    row.upper = cert.rate_bound;
    row.exact = true;
    row.source = "search-certified";
  }
  return row;
}

inline std::string csv_header() { return "K,M,N,lower,upper,exact,source\n"; }

inline std::string csv_line(const SweepRow& r, bool decimal) {
  std::ostringstream os;
  os << r.K << ',' << r.M << ',' << r.N << ',' << render(r.lower, decimal) << ','
     << render(r.upper, decimal) << ',' << (r.exact ? "true" : "false") << ',' << r.source << '\n';
  return os.str();
}

/// "a..b" with a, b non-negative integers. a > b is a valid empty range.
inline std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  auto number = [&](std::string_view part) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || v < 0) {
      throw Error(ErrorCode::kParseError, "range \"" + text + "\" is not of the form a..b");
    }
    return v;
  };
  if (dots == std::string::npos) throw Error(ErrorCode::kParseError, "range \"" + text + "\" is not of the form a..b");
  const std::string_view sv(text);
  return {number(sv.substr(0, dots)), number(sv.substr(dots + 2))};
}

// ---------------------------------------------------------------- commands

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline int cmd_capacity(std::int64_t k, std::int64_t m, std::int64_t n, bool json, bool decimal,
                        Streams io) {
  const CapacityReport r = capacity_report(k, m, n);
  if (json) {
    io.out << dump_document(serialize_capacity(r));
    return kExitOk;
  }
  io.out << "K=" << k << " M=" << m << " N=" << n << '\n'
         << "regime: " << regime_name(r.regime) << '\n';
  if (r.feasible) {
    io.out << "lower: " << render(r.lower, decimal) << " (scheme with " << r.witness_N
           << " servers)\n"
           << "upper: " << render(r.upper, decimal) << '\n';
  }
  io.out << "exact: " << (r.exact ? render(*r.exact, decimal) : std::string("none")) << '\n';
  return kExitOk;
}

inline Scheme build_scheme(std::size_t k, std::size_t m, std::optional<std::size_t> n,
                           const std::string& kind) {
  if (k < 1 || m < 1 || m > k) {
    throw Error(ErrorCode::kInvalidParameters,
                "need 1 <= M <= K, got K=" + std::to_string(k) + " M=" + std::to_string(m));
  }
  const auto ki = static_cast<std::int64_t>(k);
  const auto mi = static_cast<std::int64_t>(m);
  const auto n_min = static_cast<std::size_t>(min_servers(ki, mi));
  if (n && *n < n_min) {
    throw Error(ErrorCode::kInvalidParameters,
                "N=" + std::to_string(*n) + " is below ceil(K/M)=" + std::to_string(n_min) +
                    "; no scheme exists");
  }
  auto require_n = [&](std::size_t expected, const char* what) {
    if (n && *n != expected) {
      throw Error(ErrorCode::kInvalidParameters, std::string(what) + " scheme uses N=" +
                                                     std::to_string(expected) + ", not " +
                                                     std::to_string(*n));
    }
  };
  if (kind == "basic") {
    require_n(n_min, "basic");
    return build_basic(k, m);
  }
  if (kind == "full-rate") {
    require_n(static_cast<std::size_t>(threshold_N(ki, mi)), "full-rate");
    return build_full_rate(k, m);
  }
  if (kind == "intermediate") {
    if (!n) throw Error(ErrorCode::kInvalidParameters, "intermediate scheme needs N");
    return build_intermediate(k, m, *n);
  }
  return build_best(k, m, n.value_or(static_cast<std::size_t>(threshold_N(ki, mi))));
}

inline int cmd_build(std::size_t k, std::size_t m, std::optional<std::size_t> n,
                     const std::string& kind, const std::string& out_path, std::uint64_t budget,
                     Streams io) {
  Scheme s(build_scheme(k, m, n, kind));
  const VerificationReport rep = verify(s, budget);
  const std::string doc = dump_document(serialize_scheme(s));
  std::ostream& note = out_path.empty() ? io.err : io.out;
  if (out_path.empty()) {
    io.out << doc;
  } else {
    write_file(out_path, doc);
  }
  note << "scheme K=" << s.K << " M=" << s.M << " N=" << s.N << " p=" << s.field.modulus()
       << " L=" << s.L << " rate=" << to_string(s.rate) << " eta=" << to_string(s.eta)
       << (out_path.empty() ? "" : " written to " + out_path) << '\n'
       << "verification: " << (rep.ok() ? "ok" : "FAILED") << " (exhaustive "
       << exhaustive_status_name(rep.exhaustive.status) << ")\n";
  for (const auto& d : rep.details) note << "  k=" << d.k << " " << d.check << ": " << d.message << '\n';
  return rep.ok() ? kExitOk : kExitFailure;
}

inline int cmd_simulate(const std::string& path, std::optional<std::size_t> k, std::uint64_t seed,
                        std::size_t trials, const std::string& transcript_path, Streams io) {
  const Scheme s = load_scheme(path);
  if (k && (*k < 1 || *k > s.K)) {
    throw Error(ErrorCode::kInvalidParameters,
                "--k " + std::to_string(*k) + " outside [1:" + std::to_string(s.K) + "]");
  }
  std::mt19937_64 master(seed);
  std::size_t decoded = 0;
  std::size_t rate_mismatch = 0;
  std::size_t foreign_reads = 0;
  Json transcripts = Json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t message_seed = master();
    const std::uint64_t z_seed = master();
    const std::size_t theta = k ? *k : 1 + SymbolSource(master(), static_cast<std::uint32_t>(s.K)).next();
    const Transcript tr = run_delivery(s, theta, random_messages(s, message_seed), z_seed);
    if (tr.decoded_ok()) ++decoded;
    if (tr.measured_rate() != s.rate) ++rate_mismatch;
    for (std::size_t r : tr.messages_read) {
      if (r != theta) ++foreign_reads;
    }
    if (!transcript_path.empty()) transcripts.push_back(serialize_transcript(tr));
  }
  if (!transcript_path.empty()) {
    const Json doc = {{"scheme_rate", to_json(s.rate)},
                      {"trials", trials},
                      {"decoded", decoded},
                      {"transcripts", std::move(transcripts)}};
    if (transcript_path == "-") {
      io.out << dump_document(doc);
    } else {
      write_file(transcript_path, dump_document(doc));
    }
  }
  std::ostream& note = transcript_path == "-" ? io.err : io.out;
  note << "decoded " << decoded << "/" << trials << " trials; rate " << to_string(s.rate);
  if (rate_mismatch) note << "; " << rate_mismatch << " trials with a different measured rate";
  if (foreign_reads) note << "; " << foreign_reads << " reads of undesired messages";
  note << '\n';
  return decoded == trials && rate_mismatch == 0 && foreign_reads == 0 ? kExitOk : kExitFailure;
}

inline int cmd_verify(const std::string& path, std::uint64_t budget, bool json, Streams io) {
  const Scheme s = load_scheme(path);
  const VerificationReport r = verify(s, budget);
  if (json) {
    io.out << dump_document(serialize_report(r));
  } else {
    auto flag = [](bool b) { return b ? "ok" : "FAILED"; };
    io.out << "correctness: " << flag(r.correctness_ok) << '\n'
           << "privacy (rank): " << flag(r.rank_privacy_ok) << '\n'
           << "privacy (exhaustive): " << exhaustive_status_name(r.exhaustive.status);
    if (r.exhaustive.status == ExhaustiveStatus::kSkipped) {
      io.out << " (" << r.exhaustive.reason << ")";
    } else {
      io.out << " (" << r.exhaustive.state_space << " states per message)";
    }
    io.out << '\n'
           << "security: " << flag(r.security_ok) << '\n'
           << "eta: " << flag(r.eta_ok) << '\n';
    for (const auto& d : r.details) io.out << "  k=" << d.k << " " << d.check << ": " << d.message << '\n';
  }
  return r.ok() ? kExitOk : kExitFailure;
}

inline int cmd_converse(std::size_t k, std::size_t m, std::size_t n, const ConverseOptions& opt,
                        const std::string& out_path, Streams io) {
  const ConverseCertificate c = converse_rate(k, m, n, opt);
  const std::string doc = dump_document(serialize_certificate(c));
  std::ostream& note = out_path.empty() ? io.err : io.out;
  if (out_path.empty()) {
    io.out << doc;
  } else {
    write_file(out_path, doc);
  }
  const LowerBound lb = best_lower_bound(static_cast<std::int64_t>(k), static_cast<std::int64_t>(m),
                                         static_cast<std::int64_t>(n));
  note << "rate bound " << to_string(c.rate_bound) << " from " << c.designs_examined
       << " designs; best scheme rate " << to_string(lb.rate)
       << (lb.rate == c.rate_bound ? " (capacity settled by search)" : " (gap remains)") << '\n';
  return kExitOk;
}

inline int cmd_sweep(std::int64_t k, std::int64_t m, const std::string& range,
                     const std::string& csv_path, bool decimal, const ConverseOptions& opt,
                     bool search, Streams io) {
  const auto [lo, hi] = parse_range(range);
  std::string csv = csv_header();
  for (std::int64_t n = lo; n <= hi; ++n) csv += csv_line(sweep_row(k, m, n, opt, search), decimal);
  if (csv_path.empty()) {
    io.out << csv;
  } else {
    write_file(csv_path, csv);
    io.out << "wrote " << (hi >= lo ? hi - lo + 1 : 0) << " rows to " << csv_path << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- dispatch

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kConstructionFailure:
    case ErrorCode::kStorageViolation:
    case ErrorCode::kSingularMatrix:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

/// Runs one command line. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Private information delivery toolkit", "pidkit"};
  app.require_subcommand(1);
  Streams io{out, err};

  std::int64_t k = 0, m = 0, n = 0;
  std::optional<std::size_t> n_opt, servers, theta;
  std::optional<std::uint64_t> budget_flag;
  std::string path, out_path, kind = "auto", range, transcript_path;
  bool json = false, decimal = false, no_symmetry = false, no_search = false;
  std::uint64_t seed = 1;
  std::size_t trials = 1;

  auto* capacity = app.add_subcommand("capacity", "Closed-form capacity bounds");
  capacity->add_option("K", k, "number of messages")->required();
  capacity->add_option("M", m, "messages per server")->required();
  capacity->add_option("N", n, "number of servers")->required();
  capacity->add_flag("--json", json, "emit a JSON document");
  capacity->add_flag("--decimal", decimal, "render fractions as decimals");

  auto* build = app.add_subcommand("build", "Construct and verify a scheme");
  build->add_option("K", k, "number of messages")->required();
  build->add_option("M", m, "messages per server")->required();
  build->add_option("N", n_opt, "number of servers (default: threshold)");
  build->add_option("--servers", servers, "number of servers");
  build->add_option("--scheme", kind, "auto, basic, full-rate or intermediate")
      ->check(CLI::IsMember({"auto", "basic", "full-rate", "intermediate"}));
  build->add_option("--out", out_path, "write the scheme here instead of stdout");
  build->add_option("--exhaustive-budget", budget_flag, "state budget for exhaustive privacy");

  auto* simulate = app.add_subcommand("simulate", "Run deliveries of a scheme file");
  simulate->add_option("scheme", path, "scheme JSON")->required();
  simulate->add_option("--k", theta, "desired message (default: random per trial)");
  simulate->add_option("--seed", seed, "master seed");
  simulate->add_option("--trials", trials, "number of deliveries")->check(CLI::PositiveNumber);
  simulate->add_option("--emit-transcript", transcript_path, "write transcripts (- for stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Verify a scheme file");
  verify_cmd->add_option("scheme", path, "scheme JSON")->required();
  verify_cmd->add_option("--exhaustive-budget", budget_flag, "state budget for exhaustive privacy");
  verify_cmd->add_flag("--json", json, "emit a JSON report");

  auto* converse = app.add_subcommand("converse", "Rate upper bound by design search");
  converse->add_option("K", k, "number of messages")->required();
  converse->add_option("M", m, "messages per server")->required();
  converse->add_option("N", n, "number of servers")->required();
  converse->add_option("--budget", budget_flag, "maximum designs to examine");
  converse->add_flag("--no-symmetry", no_symmetry, "enumerate every labeled design");
  converse->add_option("--out", out_path, "write the certificate here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "Capacity over a range of server counts");
  sweep->add_option("--K", k, "number of messages")->required();
  sweep->add_option("--M", m, "messages per server")->required();
  sweep->add_option("--N-range", range, "server counts a..b")->required();
  sweep->add_option("--csv", out_path, "write the CSV here instead of stdout");
  sweep->add_option("--budget", budget_flag, "maximum designs per converse search");
  sweep->add_flag("--decimal", decimal, "render fractions as decimals");
  sweep->add_flag("--no-symmetry", no_symmetry, "enumerate every labeled design");
  sweep->add_flag("--no-search", no_search, "closed forms only");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pidkit: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    auto positive = [](std::int64_t v, const char* what) {
      if (v < 1) throw Error(ErrorCode::kInvalidParameters, std::string(what) + " must be positive");
      return static_cast<std::size_t>(v);
    };
    if (capacity->parsed()) return cmd_capacity(k, m, n, json, decimal, io);
    if (build->parsed()) {
      if (n_opt && servers && *n_opt != *servers) {
        throw Error(ErrorCode::kInvalidParameters, "N and --servers disagree");
      }
      return cmd_build(positive(k, "K"), positive(m, "M"), servers ? servers : n_opt, kind,
                       out_path, pick_budget(budget_flag, kDefaultExhaustiveBudget), io);
    }
    if (simulate->parsed()) return cmd_simulate(path, theta, seed, trials, transcript_path, io);
    if (verify_cmd->parsed()) {
      return cmd_verify(path, pick_budget(budget_flag, kDefaultExhaustiveBudget), json, io);
    }
    const ConverseOptions opt{pick_budget(budget_flag, kDefaultConverseBudget), !no_symmetry};
    if (converse->parsed()) {
      return cmd_converse(positive(k, "K"), positive(m, "M"), positive(n, "N"), opt, out_path, io);
    }
    return cmd_sweep(k, m, range, out_path, decimal, opt, !no_search, io);
  } catch (const Error& e) {
    err << "pidkit: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace pidkit::cli

#endif  // PIDKIT_TOOLS_CLI_HPP_
