#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "venuerec/types.hpp"

namespace venuerec {

/// A user's graded judgments: venue id -> rating on the 0..4 scale.
using Judgments = std::map<std::string, int, std::less<>>;

struct Collection {
  std::map<std::string, Venue, std::less<>> venues;
  std::map<std::string, UserHistory, std::less<>> users;
  std::vector<RankingRequest> requests;
  std::map<std::pair<std::string, std::string>, int> qrels;

  /// Throws ValidationError when the id is unknown.
  const Venue& venue(std::string_view id) const;
  const UserHistory& user(std::string_view id) const;

  /// All qrels entries for one user.
  Judgments judgments_for(std::string_view user_id) const;

  bool operator==(const Collection&) const = default;
};

/// Checks cross-record links: request users and candidates resolve, candidates
/// sit in the requested city, history venues resolve, qrels reference
/// candidates. Throws ValidationError listing every offending id.
void validate_collection(const Collection& collection);

struct CollectionPaths {
  std::filesystem::path venues;
  std::filesystem::path users;
  std::filesystem::path requests;
  std::filesystem::path qrels;

  /// venues.jsonl, users.jsonl, requests.jsonl, qrels.txt under `dir`.
  static CollectionPaths in_directory(const std::filesystem::path& dir);
};

Collection load_collection(const CollectionPaths& paths);

/// Writes the four dataset files. A non-empty `header` is emitted as a
/// leading `# ` comment line in each file.
void save_collection(const Collection& collection, const CollectionPaths& paths,
                     std::string_view header = {});

// Line-level codecs. Field order on output is canonical, so
// decode(encode(x)) == x and encode(decode(line)) == line for canonical lines.
std::string encode_venue(const Venue& venue);
std::string encode_user(const UserHistory& user);
std::string encode_request(const RankingRequest& request);
Venue decode_venue(std::string_view line, std::size_t line_number = 0);
UserHistory decode_user(std::string_view line, std::size_t line_number = 0);
RankingRequest decode_request(std::string_view line, std::size_t line_number = 0);

std::vector<Venue> read_venues(std::istream& in);
std::vector<UserHistory> read_users(std::istream& in);
std::vector<RankingRequest> read_requests(std::istream& in);
/// Whitespace-separated `user_id 0 venue_id rating` lines.
std::map<std::pair<std::string, std::string>, int> read_qrels(std::istream& in);
void write_qrels(std::ostream& out, const std::map<std::pair<std::string, std::string>, int>& qrels);

struct ScoredVenue {
  std::string venue_id;
  double score = 0.0;

  bool operator==(const ScoredVenue&) const = default;
};

struct RankedList {
  std::string user_id;
  std::vector<ScoredVenue> entries;

  bool operator==(const RankedList&) const = default;
};

/// Six-column TREC run lines `user_id Q0 venue_id rank score tag`, at most
/// 30 per user. Throws ValidationError on a duplicate venue within a list or
/// on scores that increase down the list.
void write_run(std::ostream& out, std::span<const RankedList> ranked, std::string_view tag,
               std::string_view header = {});

/// Reads a TREC run file; entries are ordered by the rank column.
std::vector<RankedList> read_run(std::istream& in);

/// Shortest decimal text that round-trips the double.
std::string format_score(double value);

}  // namespace venuerec
