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

#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "pidkit/pidkit.hpp"
#include "test_util.hpp"

namespace pidkit {
namespace {

using ::pidkit::testing::builder_grid;
using ::pidkit::testing::build_for;
using ::pidkit::testing::data_path;
using ::pidkit::testing::ring_scheme;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void expect_same_scheme(const Scheme& a, const Scheme& b) {
  EXPECT_EQ(a.K, b.K);
  EXPECT_EQ(a.M, b.M);
  EXPECT_EQ(a.N, b.N);
  EXPECT_EQ(a.L, b.L);
  EXPECT_EQ(a.field, b.field);
  EXPECT_EQ(a.storage, b.storage);
  EXPECT_EQ(a.D, b.D);
  EXPECT_EQ(a.G, b.G);
  EXPECT_EQ(a.H, b.H);
  EXPECT_EQ(a.F, b.F);
  EXPECT_EQ(a.rate, b.rate);
  EXPECT_EQ(a.eta, b.eta);
}

// Expects a parse error whose message contains the given text, usually a
// JSON pointer.
void expect_rejected(const Json& doc, const std::string& needle) {
  try {
    deserialize_scheme(doc);
    ADD_FAILURE() << "accepted a document broken at " << needle;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

TEST(SchemeJsonTest, GoldenRingSchemeIsByteStable) {
  const std::string text = slurp(data_path("ring_scheme.json"));
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(dump_document(serialize_scheme(ring_scheme())), text);
  expect_same_scheme(deserialize_scheme(parse_document(text)), ring_scheme());
}

TEST(SchemeJsonTest, GoldenXorSchemeMatchesBuilder) {
  const std::string text = slurp(data_path("xor_scheme.json"));
  const Scheme s = deserialize_scheme(parse_document(text));
  EXPECT_TRUE(verify(s).ok());
  EXPECT_EQ(s.rate, Rational(1, 3));
  EXPECT_EQ(dump_document(serialize_scheme(s)), text);
  EXPECT_EQ(dump_document(serialize_scheme(build_basic(3, 1))), text);
}

TEST(SchemeJsonTest, RoundTripsBuiltSchemes) {
  for (const auto& p : builder_grid(9)) {
    const Scheme s = build_for(p);
    const std::string text = dump_document(serialize_scheme(s));
    const Scheme back = deserialize_scheme(parse_document(text));
    expect_same_scheme(back, s);
    EXPECT_EQ(dump_document(serialize_scheme(back)), text);
  }
}

TEST(SchemeJsonTest, Rejections) {
  const Json good = serialize_scheme(ring_scheme());
  Json j = good;
  j["p"] = 6;
  expect_rejected(j, "at /p");
  j = good;
  j["G"][0].push_back(1);
  expect_rejected(j, "at /G/0");
  j = good;
  j["D"] = {1, 1};
  expect_rejected(j, "at /D");
  j = good;
  j["F"]["2"][1][0] = 5;
  expect_rejected(j, "at /F/2/1/0");
  j = good;
  j["F"].erase("3");
  expect_rejected(j, "at /F");
  j = good;
  j.erase("H");
  expect_rejected(j, "missing key \"H\"");
  j = good;
  j["version"] = 2;
  expect_rejected(j, "at /version");
  j = good;
  j["storage"][0] = {1, 4};
  expect_rejected(j, "at /storage");
  j = good;
  j["rate"]["den"] = 0;
  expect_rejected(j, "at /rate");
  j = good;
  j["K"] = "3";
  expect_rejected(j, "at /K");
  EXPECT_THROW(deserialize_scheme(Json::array()), Error);
}

TEST(SchemeJsonTest, MutantParsesButFailsVerification) {
  const Scheme s = deserialize_scheme(parse_document(slurp(data_path("mutant_scheme.json"))));
  const auto rep = verify(s);
  EXPECT_FALSE(rep.correctness_ok);
  EXPECT_FALSE(rep.ok());
}

TEST(SchemeJsonTest, CorruptTextIsAParseError) {
  try {
    parse_document(slurp(data_path("corrupt_scheme.json")));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}

TEST(TranscriptJsonTest, RoundTrip) {
  const Scheme s = ring_scheme();
  const Transcript t = run_delivery(s, 2, random_messages(s, 4), 8);
  const Json j = serialize_transcript(t);
  EXPECT_EQ(j["rate"], Json({{"num", 2}, {"den", 3}}));
  const Transcript back = deserialize_transcript(parse_document(dump_document(j)), 5);
  EXPECT_EQ(back.k, t.k);
  EXPECT_EQ(back.seed, t.seed);
  EXPECT_EQ(back.messages, t.messages);
  EXPECT_EQ(back.z, t.z);
  EXPECT_EQ(back.answers, t.answers);
  EXPECT_EQ(back.decoded, t.decoded);
  EXPECT_EQ(back.download, t.download);
  EXPECT_EQ(back.messages_read, t.messages_read);

  Json bad = j;
  bad["decoded_ok"] = false;
  EXPECT_THROW(deserialize_transcript(bad), Error);
  bad = j;
  bad["z"][0] = 7;
  EXPECT_THROW(deserialize_transcript(bad, 5), Error);
  EXPECT_NO_THROW(deserialize_transcript(bad));
}

TEST(ReportJsonTest, RoundTrip) {
  Scheme broken = ring_scheme();
  broken.G(1, 2) = 4;
  for (const Scheme& s : {ring_scheme(), broken, build_full_rate(8, 3)}) {
    const VerificationReport r = verify(s);
    const Json j = serialize_report(r);
    const VerificationReport back = deserialize_report(j);
    EXPECT_EQ(serialize_report(back), j);
    EXPECT_EQ(back.ok(), r.ok());
    EXPECT_EQ(back.details.size(), r.details.size());
  }
  Json j = serialize_report(verify(ring_scheme()));
  j["ok"] = false;
  EXPECT_THROW(deserialize_report(j), Error);
  j = serialize_report(verify(ring_scheme()));
  j["exhaustive_privacy"]["status"] = "maybe";
  EXPECT_THROW(deserialize_report(j), Error);
}

TEST(CapacityJsonTest, RoundTrip) {
  for (std::int64_t n = 1; n <= 7; ++n) {
    const CapacityReport r = capacity_report(7, 3, n);
    const Json j = serialize_capacity(r);
    EXPECT_EQ(serialize_capacity(deserialize_capacity(j)), j);
  }
  const Json j = serialize_capacity(capacity_report(3, 2, 3));
  EXPECT_EQ(j["exact"], Json({{"num", 2}, {"den", 3}}));
  EXPECT_EQ(j["regime"], "full-rate");
  EXPECT_TRUE(serialize_capacity(capacity_report(7, 3, 4))["exact"].is_null());
  Json bad = j;
  bad["regime"] = "sideways";
  EXPECT_THROW(deserialize_capacity(bad), Error);
}

TEST(CertificateJsonTest, RoundTrip) {
  const ConverseCertificate c = converse_rate(7, 3, 4);
  const Json j = serialize_certificate(c);
  EXPECT_EQ(j["rate_bound"], Json({{"num", 2}, {"den", 5}}));
  const ConverseCertificate back = deserialize_certificate(parse_document(dump_document(j)));
  EXPECT_EQ(serialize_certificate(back), j);
  EXPECT_EQ(back.best_design, c.best_design);
  Json bad = j;
  bad["rate_bound"] = {{"num", 1}, {"den", 2}};
  EXPECT_THROW(deserialize_certificate(bad), Error);
}

}  // namespace
}  // namespace pidkit
