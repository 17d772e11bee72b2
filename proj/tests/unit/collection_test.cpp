#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "venuerec/collection.hpp"
#include "venuerec/error.hpp"
#include "venuerec/synthetic.hpp"

using namespace venuerec;

namespace {

Collection tiny() {
  Collection c;
  auto v1 = fixture::venue("v1", {"cozy", "pasta"});
  v1.reviews.push_back(fixture::review("v1", "Great pasta", 5, 10, 3));
  fixture::add(c, v1);
  fixture::add(c, fixture::venue("v2"));
  fixture::add(c, fixture::venue("v3", {}, "c2"));
  c.users.emplace("u1", fixture::user("u1", {{"v3", 4}}));
  c.requests.push_back({"u1", "c1", {"v1", "v2"}});
  c.qrels[{"u1", "v1"}] = 4;
  c.qrels[{"u1", "v2"}] = 0;
  return c;
}

}  // namespace

TEST(Codec, VenueRoundTrip) {
  const Collection c = tiny();
  const Venue& v = c.venue("v1");
  const std::string line = encode_venue(v);
  EXPECT_EQ(decode_venue(line), v);
  EXPECT_EQ(encode_venue(decode_venue(line)), line);
}

TEST(Codec, MissingIdNamesLine) {
  std::istringstream in("{\"id\":\"v1\",\"city\":\"c\"}\n{\"city\":\"c\"}\n");
  try {
    read_venues(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Codec, MalformedJson) {
  std::istringstream in("{not json\n");
  EXPECT_THROW(read_venues(in), ParseError);
}

TEST(Codec, ThreeVenueLines) {
  std::istringstream in(
      "{\"id\":\"v1\",\"city\":\"c\"}\n{\"id\":\"v2\",\"city\":\"c\"}\n{\"id\":\"v3\",\"city\":\"c\"}\n");
  EXPECT_EQ(read_venues(in).size(), 3u);
}

TEST(Qrels, FieldMapping) {
  std::istringstream in("# comment\nu1 0 v7 4\n");
  const auto q = read_qrels(in);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q.at({"u1", "v7"}), 4);
}

TEST(Qrels, RejectsBadLines) {
  std::istringstream short_line("u1 0 v7\n");
  EXPECT_THROW(read_qrels(short_line), ParseError);
  std::istringstream bad_rating("u1 0 v7 9\n");
  EXPECT_THROW(read_qrels(bad_rating), ParseError);
  std::istringstream dup("u1 0 v7 1\nu1 0 v7 2\n");
  EXPECT_THROW(read_qrels(dup), ParseError);
}

TEST(Collection, DanglingCandidateIsListed) {
  Collection c = tiny();
  c.requests[0].candidates.push_back("v9");
  try {
    validate_collection(c);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("v9"), std::string::npos);
  }
}

TEST(Collection, CandidateInWrongCity) {
  Collection c = tiny();
  c.requests[0].candidates.push_back("v3");
  EXPECT_THROW(validate_collection(c), ValidationError);
}

TEST(Collection, QrelsOutsideCandidates) {
  Collection c = tiny();
  c.qrels[{"u1", "v3"}] = 2;
  EXPECT_THROW(validate_collection(c), ValidationError);
}

TEST(Collection, SaveLoadRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "venuerec_roundtrip";
  std::filesystem::create_directories(dir);
  SyntheticSpec spec;
  spec.n_users = 6;
  spec.n_venues = 40;
  const Collection c = generate_synthetic(spec);
  save_collection(c, CollectionPaths::in_directory(dir), "config-hash: test");
  EXPECT_EQ(load_collection(CollectionPaths::in_directory(dir)), c);
  std::filesystem::remove_all(dir);
}

TEST(Run, WritesTrecLines) {
  const std::vector<RankedList> lists = {{"u1", {{"v2", 0.9}, {"v1", 0.3}}}, {"u2", {}}};
  std::ostringstream out;
  write_run(out, lists, "tag");
  EXPECT_EQ(out.str(), "u1 Q0 v2 1 0.9 tag\nu1 Q0 v1 2 0.3 tag\n");
}

TEST(Run, TruncatesToThirty) {
  RankedList list{"u1", {}};
  for (int i = 0; i < 31; ++i) list.entries.push_back({"v" + std::to_string(100 + i), 100.0 - i});
  std::ostringstream out;
  write_run(out, std::vector<RankedList>{list}, "t");
  std::istringstream in(out.str());
  const auto back = read_run(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].entries.size(), 30u);
  EXPECT_EQ(back[0].entries.front().venue_id, "v100");
}

TEST(Run, RejectsDuplicatesAndRisingScores) {
  std::ostringstream out;
  const std::vector<RankedList> dup = {{"u1", {{"v1", 0.9}, {"v1", 0.3}}}};
  EXPECT_THROW(write_run(out, dup, "t"), ValidationError);
  const std::vector<RankedList> rising = {{"u1", {{"v1", 0.3}, {"v2", 0.9}}}};
  EXPECT_THROW(write_run(out, rising, "t"), ValidationError);
}

TEST(Run, ReadOrdersByRank) {
  std::istringstream in("u1 Q0 v1 2 0.3 t\nu1 Q0 v2 1 0.9 t\n");
  const auto lists = read_run(in);
  ASSERT_EQ(lists.size(), 1u);
  EXPECT_EQ(lists[0].entries[0].venue_id, "v2");
  EXPECT_DOUBLE_EQ(lists[0].entries[0].score, 0.9);
}

TEST(Run, ScoreFormatRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-7, 12345.678}) {
    EXPECT_EQ(std::stod(format_score(v)), v);
  }
}
