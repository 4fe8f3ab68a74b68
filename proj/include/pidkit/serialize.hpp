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

// JSON documents for schemes, transcripts, reports and certificates.
//
// Objects use sorted keys and two-space indentation, so a document is
// byte-stable for a given value. Fractions are {"num": n, "den": d}; indices
// are 1-based. Readers report the JSON pointer of the first offending value.

#ifndef PIDKIT_SERIALIZE_HPP_
#define PIDKIT_SERIALIZE_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pidkit/capacity.hpp"
#include "pidkit/converse.hpp"
#include "pidkit/error.hpp"
#include "pidkit/field.hpp"
#include "pidkit/matrix.hpp"
#include "pidkit/rational.hpp"
#include "pidkit/scheme.hpp"
#include "pidkit/simulator.hpp"
#include "pidkit/storage.hpp"
#include "pidkit/verifier.hpp"

namespace pidkit {

using Json = nlohmann::json;

inline constexpr int kSchemeDocumentVersion = 1;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& ptr, const std::string& what) {
  throw Error(ErrorCode::kParseError, "at " + (ptr.empty() ? std::string("/") : ptr) + ": " + what);
}

inline std::string child(const std::string& ptr, std::string_view key) {
  return ptr + "/" + std::string(key);
}
inline std::string child(const std::string& ptr, std::size_t i) {
  return ptr + "/" + std::to_string(i);
}

inline const Json& member(const Json& obj, const std::string& ptr, std::string_view key) {
  if (!obj.is_object()) parse_fail(ptr, "expected an object");
  auto it = obj.find(std::string(key));
  if (it == obj.end()) parse_fail(ptr, "missing key \"" + std::string(key) + "\"");
  return *it;
}

inline const Json& array_at(const Json& j, const std::string& ptr) {
  if (!j.is_array()) parse_fail(ptr, "expected an array");
  return j;
}

inline std::uint64_t read_uint(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    parse_fail(ptr, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

inline std::size_t read_count(const Json& obj, const std::string& ptr, std::string_view key) {
  return static_cast<std::size_t>(read_uint(member(obj, ptr, key), child(ptr, key)));
}

inline bool read_bool(const Json& obj, const std::string& ptr, std::string_view key) {
  const Json& j = member(obj, ptr, key);
  if (!j.is_boolean()) parse_fail(child(ptr, key), "expected true or false");
  return j.get<bool>();
}

inline std::string read_string(const Json& obj, const std::string& ptr, std::string_view key) {
  const Json& j = member(obj, ptr, key);
  if (!j.is_string()) parse_fail(child(ptr, key), "expected a string");
  return j.get<std::string>();
}

inline Rational read_rational(const Json& j, const std::string& ptr) {
  const Json& num = member(j, ptr, "num");
  const Json& den = member(j, ptr, "den");
  if (!num.is_number_integer()) parse_fail(child(ptr, "num"), "expected an integer");
  const std::uint64_t d = read_uint(den, child(ptr, "den"));
  if (d == 0) parse_fail(child(ptr, "den"), "denominator is zero");
  return Rational(num.get<std::int64_t>(), static_cast<std::int64_t>(d));
}

inline std::vector<std::size_t> read_counts(const Json& j, const std::string& ptr) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < array_at(j, ptr).size(); ++i) {
    out.push_back(static_cast<std::size_t>(read_uint(j[i], child(ptr, i))));
  }
  return out;
}

inline std::vector<IndexSet> read_index_lists(const Json& j, const std::string& ptr) {
  std::vector<IndexSet> out;
  for (std::size_t i = 0; i < array_at(j, ptr).size(); ++i) {
    out.push_back(read_counts(j[i], child(ptr, i)));
  }
  return out;
}

inline SymbolVector read_symbols(const Json& j, const std::string& ptr, std::uint32_t p) {
  SymbolVector out;
  for (std::size_t i = 0; i < array_at(j, ptr).size(); ++i) {
    const std::uint64_t x = read_uint(j[i], child(ptr, i));
    if (x >= p) parse_fail(child(ptr, i), std::to_string(x) + " is not a residue mod " + std::to_string(p));
    out.push_back(static_cast<Residue>(x));
  }
  return out;
}

inline MatrixFp read_grid(const Json& j, const std::string& ptr, const PrimeField& f,
                          std::size_t rows, std::size_t cols) {
  if (array_at(j, ptr).size() != rows) {
    parse_fail(ptr, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  }
  MatrixFp m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = child(ptr, r);
    const SymbolVector row = read_symbols(j[r], rp, f.modulus());
    if (row.size() != cols) {
      parse_fail(rp, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

inline Json grid(const MatrixFp& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Residue x : m.row(r)) row.push_back(x);
    out.push_back(std::move(row));
  }
  return out;
}

inline Json index_lists(const std::vector<IndexSet>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(s);
  return out;
}

}  // namespace detail

inline Json to_json(const Rational& r) { return {{"num", r.numerator()}, {"den", r.denominator()}}; }

/// Canonical text of a document: sorted keys, two-space indent, trailing newline.
inline std::string dump_document(const Json& j) { return j.dump(2) + "\n"; }

/// Parses JSON text; syntax errors become parse errors with a byte offset.
inline Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

// ---------------------------------------------------------------- scheme

inline Json serialize_scheme(const Scheme& s) {
  Json f = Json::object();
  for (std::size_t k = 1; k <= s.K; ++k) f[std::to_string(k)] = detail::grid(s.precoder(k));
  return {
      {"version", kSchemeDocumentVersion},
      {"K", s.K},
      {"M", s.M},
      {"N", s.N},
      {"p", s.field.modulus()},
      {"L", s.L},
      {"storage", detail::index_lists(s.storage.sets())},
      {"D", s.D},
      {"G", detail::grid(s.G)},
      {"H", detail::grid(s.H)},
      {"F", std::move(f)},
      {"rate", to_json(s.rate)},
      {"eta", to_json(s.eta)},
  };
}

inline Scheme deserialize_scheme(const Json& j) {
  using detail::parse_fail;
  const std::string root;
  if (!j.is_object()) parse_fail(root, "expected a scheme object");
  if (detail::read_count(j, root, "version") != kSchemeDocumentVersion) {
    parse_fail("/version", "unsupported version");
  }
  Scheme s;
  s.K = detail::read_count(j, root, "K");
  s.M = detail::read_count(j, root, "M");
  s.N = detail::read_count(j, root, "N");
  s.L = detail::read_count(j, root, "L");
  if (s.K == 0 || s.M == 0 || s.M > s.K) parse_fail("/M", "need 1 <= M <= K");
  if (s.L == 0) parse_fail("/L", "L must be positive");

  const std::uint64_t p = detail::read_count(j, root, "p");
  if (p > PrimeField::kMaxModulus || !is_prime(static_cast<std::uint32_t>(p))) {
    parse_fail("/p", std::to_string(p) + " is not a supported prime");
  }
  s.field = PrimeField(static_cast<std::uint32_t>(p));

  auto sets = detail::read_index_lists(detail::member(j, root, "storage"), "/storage");
  if (sets.size() != s.N) {
    parse_fail("/storage", std::to_string(sets.size()) + " servers listed, N=" + std::to_string(s.N));
  }
  try {
    s.storage = StorageDesign(s.K, s.M, std::move(sets));
  } catch (const Error& e) {
    parse_fail("/storage", e.what());
  }

  s.D = detail::read_counts(detail::member(j, root, "D"), "/D");
  if (s.D.size() != s.N) parse_fail("/D", "expected " + std::to_string(s.N) + " entries");
  const std::size_t total = s.download();
  if (total < s.L) parse_fail("/D", "D_sum=" + std::to_string(total) + " is below L");

  s.G = detail::read_grid(detail::member(j, root, "G"), "/G", s.field, s.L, total);
  s.H = detail::read_grid(detail::member(j, root, "H"), "/H", s.field, total, total - s.L);
  const Json& f = detail::member(j, root, "F");
  if (!f.is_object()) parse_fail("/F", "expected an object keyed by message index");
  if (f.size() != s.K) parse_fail("/F", "expected " + std::to_string(s.K) + " precoders");
  for (std::size_t k = 1; k <= s.K; ++k) {
    const std::string key = std::to_string(k);
    s.F.push_back(detail::read_grid(detail::member(f, "/F", key), "/F/" + key, s.field, total, s.L));
  }
  s.rate = detail::read_rational(detail::member(j, root, "rate"), "/rate");
  s.eta = detail::read_rational(detail::member(j, root, "eta"), "/eta");
  try {
    validate_scheme(s);
  } catch (const Error& e) {
    parse_fail(root, e.what());
  }
  return s;
}

// ---------------------------------------------------------------- transcript

inline Json serialize_transcript(const Transcript& t) {
  Json answers = Json::array();
  for (const auto& a : t.answers) answers.push_back(a);
  Json messages = Json::array();
  for (const auto& w : t.messages) messages.push_back(w);
  return {
      {"k", t.k},
      {"seed", t.seed},
      {"messages", std::move(messages)},
      {"z", t.z},
      {"answers", std::move(answers)},
      {"decoded", t.decoded},
      {"decoded_ok", t.decoded_ok()},
      {"download", t.download},
      {"rate", to_json(t.measured_rate())},
      {"messages_read", t.messages_read},
  };
}

/// Symbols are checked against p when p is nonzero.
inline Transcript deserialize_transcript(const Json& j, std::uint32_t p = 0) {
  const std::string root;
  const std::uint32_t bound = p == 0 ? std::numeric_limits<std::uint32_t>::max() : p;
  Transcript t;
  t.k = detail::read_count(j, root, "k");
  t.seed = detail::read_uint(detail::member(j, root, "seed"), "/seed");
  const Json& msgs = detail::array_at(detail::member(j, root, "messages"), "/messages");
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    t.messages.push_back(detail::read_symbols(msgs[i], detail::child("/messages", i), bound));
  }
  t.z = detail::read_symbols(detail::member(j, root, "z"), "/z", bound);
  const Json& ans = detail::array_at(detail::member(j, root, "answers"), "/answers");
  for (std::size_t i = 0; i < ans.size(); ++i) {
    t.answers.push_back(detail::read_symbols(ans[i], detail::child("/answers", i), bound));
  }
  t.decoded = detail::read_symbols(detail::member(j, root, "decoded"), "/decoded", bound);
  t.download = detail::read_count(j, root, "download");
  t.messages_read = detail::read_counts(detail::member(j, root, "messages_read"), "/messages_read");
  if (t.download == 0) detail::parse_fail("/download", "must be positive");
  if (detail::read_bool(j, root, "decoded_ok") != t.decoded_ok()) {
    detail::parse_fail("/decoded_ok", "disagrees with decoded and messages");
  }
  if (detail::read_rational(detail::member(j, root, "rate"), "/rate") != t.measured_rate()) {
    detail::parse_fail("/rate", "disagrees with decoded length and download");
  }
  return t;
}

// ---------------------------------------------------------------- verification report

inline Json serialize_report(const VerificationReport& r) {
  Json ex = {
      {"status", std::string(exhaustive_status_name(r.exhaustive.status))},
      {"state_space", r.exhaustive.state_space},
      {"reason", r.exhaustive.reason},
      {"counterexample_k", r.exhaustive.counterexample_k},
      {"answers_uniform", nullptr},
      {"joint_identical", nullptr},
  };
  if (r.exhaustive.answers_uniform) ex["answers_uniform"] = *r.exhaustive.answers_uniform;
  if (r.exhaustive.joint_identical) ex["joint_identical"] = *r.exhaustive.joint_identical;
  Json details = Json::array();
  for (const auto& d : r.details) {
    details.push_back({{"k", d.k}, {"check", d.check}, {"message", d.message}});
  }
  return {
      {"correctness_ok", r.correctness_ok},
      {"rank_privacy_ok", r.rank_privacy_ok},
      {"exhaustive_privacy", std::move(ex)},
      {"security_ok", r.security_ok},
      {"eta_ok", r.eta_ok},
      {"ok", r.ok()},
      {"details", std::move(details)},
  };
}

inline VerificationReport deserialize_report(const Json& j) {
  const std::string root;
  VerificationReport r;
  r.correctness_ok = detail::read_bool(j, root, "correctness_ok");
  r.rank_privacy_ok = detail::read_bool(j, root, "rank_privacy_ok");
  r.security_ok = detail::read_bool(j, root, "security_ok");
  r.eta_ok = detail::read_bool(j, root, "eta_ok");
  const std::string ep = "/exhaustive_privacy";
  const Json& ex = detail::member(j, root, "exhaustive_privacy");
  const std::string status = detail::read_string(ex, ep, "status");
  if (status == "passed") {
    r.exhaustive.status = ExhaustiveStatus::kPassed;
  } else if (status == "skipped") {
    r.exhaustive.status = ExhaustiveStatus::kSkipped;
  } else if (status == "failed") {
    r.exhaustive.status = ExhaustiveStatus::kFailed;
  } else {
    detail::parse_fail(ep + "/status", "unknown status \"" + status + "\"");
  }
  r.exhaustive.state_space = detail::read_uint(detail::member(ex, ep, "state_space"), ep + "/state_space");
  r.exhaustive.reason = detail::read_string(ex, ep, "reason");
  r.exhaustive.counterexample_k = detail::read_count(ex, ep, "counterexample_k");
  for (auto [key, slot] : {std::pair{"answers_uniform", &r.exhaustive.answers_uniform},
                           std::pair{"joint_identical", &r.exhaustive.joint_identical}}) {
    const Json& v = detail::member(ex, ep, key);
    if (v.is_null()) continue;
    if (!v.is_boolean()) detail::parse_fail(ep + "/" + key, "expected true, false or null");
    *slot = v.get<bool>();
  }
  const Json& details = detail::array_at(detail::member(j, root, "details"), "/details");
  for (std::size_t i = 0; i < details.size(); ++i) {
    const std::string dp = detail::child("/details", i);
    r.details.push_back({detail::read_count(details[i], dp, "k"),
                         detail::read_string(details[i], dp, "check"),
                         detail::read_string(details[i], dp, "message")});
  }
  if (detail::read_bool(j, root, "ok") != r.ok()) detail::parse_fail("/ok", "disagrees with the checks");
  return r;
}

// ---------------------------------------------------------------- capacity report

inline Json serialize_capacity(const CapacityReport& r) {
  return {
      {"K", r.K},
      {"M", r.M},
      {"N", r.N},
      {"feasible", r.feasible},
      {"lower", to_json(r.lower)},
      {"upper", to_json(r.upper)},
      {"exact", r.exact ? to_json(*r.exact) : Json(nullptr)},
      {"regime", std::string(regime_name(r.regime))},
      {"witness_N", r.witness_N},
  };
}

inline CapacityReport deserialize_capacity(const Json& j) {
  const std::string root;
  CapacityReport r;
  r.K = static_cast<std::int64_t>(detail::read_count(j, root, "K"));
  r.M = static_cast<std::int64_t>(detail::read_count(j, root, "M"));
  r.N = static_cast<std::int64_t>(detail::read_count(j, root, "N"));
  r.feasible = detail::read_bool(j, root, "feasible");
  r.lower = detail::read_rational(detail::member(j, root, "lower"), "/lower");
  r.upper = detail::read_rational(detail::member(j, root, "upper"), "/upper");
  const Json& exact = detail::member(j, root, "exact");
  if (!exact.is_null()) r.exact = detail::read_rational(exact, "/exact");
  const std::string regime = detail::read_string(j, root, "regime");
  bool known = false;
  for (Regime g : {Regime::kInfeasible, Regime::kTightAtNMin, Regime::kIntermediate, Regime::kFullRate}) {
    if (regime_name(g) == regime) {
      r.regime = g;
      known = true;
    }
  }
  if (!known) detail::parse_fail("/regime", "unknown regime \"" + regime + "\"");
  r.witness_N = static_cast<std::int64_t>(detail::read_count(j, root, "witness_N"));
  return r;
}

// ---------------------------------------------------------------- converse certificate

inline Json serialize_certificate(const ConverseCertificate& c) {
  Json downloads = Json::array();
  for (const auto& d : c.downloads) downloads.push_back(to_json(d));
  Json weights = Json::array();
  for (const auto& w : c.weights) weights.push_back(to_json(w));
  return {
      {"K", c.K},
      {"M", c.M},
      {"N", c.N},
      {"best_design", detail::index_lists(c.best_design.sets())},
      {"constraints", detail::index_lists(c.constraints)},
      {"lp_value", to_json(c.lp_value)},
      {"rate_bound", to_json(c.rate_bound)},
      {"designs_examined", c.designs_examined},
      {"downloads", std::move(downloads)},
      {"weights", std::move(weights)},
      {"symmetry_reduction", c.symmetry_reduction},
      {"sub_capacity_winner", c.sub_capacity_winner},
      {"notes", c.notes},
  };
}

inline ConverseCertificate deserialize_certificate(const Json& j) {
  const std::string root;
  ConverseCertificate c;
  c.K = detail::read_count(j, root, "K");
  c.M = detail::read_count(j, root, "M");
  c.N = detail::read_count(j, root, "N");
  try {
    c.best_design = StorageDesign(
        c.K, c.M, detail::read_index_lists(detail::member(j, root, "best_design"), "/best_design"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    detail::parse_fail("/best_design", e.what());
  }
  c.constraints = detail::read_index_lists(detail::member(j, root, "constraints"), "/constraints");
  c.lp_value = detail::read_rational(detail::member(j, root, "lp_value"), "/lp_value");
  c.rate_bound = detail::read_rational(detail::member(j, root, "rate_bound"), "/rate_bound");
  c.designs_examined = detail::read_uint(detail::member(j, root, "designs_examined"), "/designs_examined");
  for (auto [key, out] : {std::pair{"downloads", &c.downloads}, std::pair{"weights", &c.weights}}) {
    const std::string ptr = std::string("/") + key;
    const Json& arr = detail::array_at(detail::member(j, root, key), ptr);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out->push_back(detail::read_rational(arr[i], detail::child(ptr, i)));
    }
  }
  c.symmetry_reduction = detail::read_bool(j, root, "symmetry_reduction");
  c.sub_capacity_winner = detail::read_bool(j, root, "sub_capacity_winner");
  const Json& notes = detail::array_at(detail::member(j, root, "notes"), "/notes");
  for (std::size_t i = 0; i < notes.size(); ++i) {
    if (!notes[i].is_string()) detail::parse_fail(detail::child("/notes", i), "expected a string");
    c.notes.push_back(notes[i].get<std::string>());
  }
  if (c.lp_value <= Rational(0) || c.rate_bound != Rational(1) / c.lp_value) {
    detail::parse_fail("/rate_bound", "must equal 1 / lp_value");
  }
  return c;
}

}  // namespace pidkit

#endif  // PIDKIT_SERIALIZE_HPP_
