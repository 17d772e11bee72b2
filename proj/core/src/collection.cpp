#include "venuerec/collection.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "venuerec/error.hpp"

namespace venuerec {

namespace {

constexpr const char* kModule = "ingest";

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

std::string id_list(const std::set<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

json parse_object(std::string_view line, std::size_t line_number) {
  json j = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError(kModule, "malformed JSON", line_number);
  if (!j.is_object()) throw ParseError(kModule, "expected a JSON object", line_number);
  return j;
}

std::string required_string(const json& j, const char* key, std::size_t line_number) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(kModule, std::string("missing required field \"") + key + "\"", line_number);
  }
  if (!it->is_string()) {
    throw ParseError(kModule, std::string("field \"") + key + "\" must be a string", line_number);
  }
  return it->get<std::string>();
}

std::int64_t integer_field(const json& j, const char* key, std::size_t line_number,
                           std::optional<std::int64_t> fallback) {
  const auto it = j.find(key);
  if (it == j.end()) {
    if (fallback) return *fallback;
    throw ParseError(kModule, std::string("missing required field \"") + key + "\"", line_number);
  }
  if (!it->is_number_integer()) {
    throw ParseError(kModule, std::string("field \"") + key + "\" must be an integer",
                     line_number);
  }
  return it->get<std::int64_t>();
}

std::vector<std::string> string_list(const json& j, const char* key, std::size_t line_number) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_array()) {
    throw ParseError(kModule, std::string("field \"") + key + "\" must be an array", line_number);
  }
  std::vector<std::string> out;
  for (const auto& e : *it) {
    if (!e.is_string()) {
      throw ParseError(kModule, std::string("field \"") + key + "\" must hold strings",
                       line_number);
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::optional<std::string> optional_string(const json& j, const char* key,
                                           std::size_t line_number) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw ParseError(kModule, std::string("field \"") + key + "\" must be a string", line_number);
  }
  return it->get<std::string>();
}

std::string dump(const ordered_json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::strict);
}

bool skip_line(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#';
}

template <typename Decode>
auto read_lines(std::istream& in, Decode decode) {
  std::vector<decltype(decode(std::string_view{}, std::size_t{}))> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skip_line(line)) continue;
    try {
      out.push_back(decode(line, line_number));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(kModule, e.what(), line_number);
    }
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(kModule, "cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError(kModule, "cannot write '" + path.string() + "'");
  return out;
}

void write_header(std::ostream& out, std::string_view header) {
  if (!header.empty()) out << "# " << header << '\n';
}

}  // namespace

const Venue& Collection::venue(std::string_view id) const {
  const auto it = venues.find(id);
  if (it == venues.end()) {
    throw ValidationError(kModule, "unknown venue '" + std::string(id) + "'");
  }
  return it->second;
}

const UserHistory& Collection::user(std::string_view id) const {
  const auto it = users.find(id);
  if (it == users.end()) throw ValidationError(kModule, "unknown user '" + std::string(id) + "'");
  return it->second;
}

Judgments Collection::judgments_for(std::string_view user_id) const {
  Judgments out;
  const auto first = qrels.lower_bound({std::string(user_id), std::string()});
  for (auto it = first; it != qrels.end() && it->first.first == user_id; ++it) {
    out.emplace(it->first.second, it->second);
  }
  return out;
}

void validate_collection(const Collection& collection) {
  std::set<std::string> missing_venues;
  std::set<std::string> wrong_city;
  std::set<std::string> missing_users;
  std::set<std::pair<std::string, std::string>> candidate_pairs;
  for (const auto& request : collection.requests) {
    if (!collection.users.contains(request.user_id)) missing_users.insert(request.user_id);
    std::set<std::string> seen;
    for (const auto& id : request.candidates) {
      if (!seen.insert(id).second) {
        throw ValidationError(kModule, "request for user '" + request.user_id +
                                           "' lists venue '" + id + "' twice");
      }
      const auto it = collection.venues.find(id);
      if (it == collection.venues.end()) {
        missing_venues.insert(id);
      } else if (it->second.city != request.city) {
        wrong_city.insert(id);
      }
      candidate_pairs.emplace(request.user_id, id);
    }
  }
  if (!missing_venues.empty()) {
    throw ValidationError(kModule, "requests reference unknown venues: " + id_list(missing_venues));
  }
  if (!wrong_city.empty()) {
    throw ValidationError(kModule,
                          "candidates outside the requested city: " + id_list(wrong_city));
  }
  if (!missing_users.empty()) {
    throw ValidationError(kModule, "requests reference unknown users: " + id_list(missing_users));
  }
  std::set<std::string> dangling_history;
  for (const auto& [id, user] : collection.users) {
    for (const auto& rated : user.rated_venues) {
      if (!collection.venues.contains(rated.venue_id)) dangling_history.insert(rated.venue_id);
    }
  }
  if (!dangling_history.empty()) {
    throw ValidationError(kModule,
                          "user histories reference unknown venues: " + id_list(dangling_history));
  }
  std::set<std::string> unrequested;
  for (const auto& [key, rating] : collection.qrels) {
    if (rating < kMinUserRating || rating > kMaxUserRating) {
      throw RangeError(kModule, "qrels rating " + std::to_string(rating) + " for (" + key.first +
                                    ", " + key.second + ") outside [0,4]");
    }
    if (!candidate_pairs.contains(key)) unrequested.insert(key.first + "/" + key.second);
  }
  if (!unrequested.empty()) {
    throw ValidationError(kModule,
                          "qrels entries outside every candidate list: " + id_list(unrequested));
  }
}

CollectionPaths CollectionPaths::in_directory(const std::filesystem::path& dir) {
  return {dir / "venues.jsonl", dir / "users.jsonl", dir / "requests.jsonl", dir / "qrels.txt"};
}

std::string encode_venue(const Venue& venue) {
  ordered_json j;
  j["id"] = venue.id;
  j["city"] = venue.city;
  j["categories_yelp"] = venue.categories_yelp;
  j["categories_foursquare"] = venue.categories_foursquare;
  j["keywords"] = venue.keywords;
  auto reviews = ordered_json::array();
  for (const auto& r : venue.reviews) {
    ordered_json jr;
    jr["author_id"] = r.author_id;
    jr["text"] = r.text;
    jr["rating"] = r.rating;
    jr["timestamp"] = r.timestamp;
    jr["author_review_count"] = r.author_review_count;
    reviews.push_back(std::move(jr));
  }
  j["reviews"] = std::move(reviews);
  return dump(j);
}

Venue decode_venue(std::string_view line, std::size_t line_number) {
  const json j = parse_object(line, line_number);
  Venue v;
  v.id = required_string(j, "id", line_number);
  v.city = required_string(j, "city", line_number);
  v.categories_yelp = normalize_item_set(string_list(j, "categories_yelp", line_number));
  v.categories_foursquare = normalize_item_set(string_list(j, "categories_foursquare", line_number));
  v.keywords = normalize_item_set(string_list(j, "keywords", line_number));
  if (const auto it = j.find("reviews"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError(kModule, "field \"reviews\" must be an array", line_number);
    for (const auto& jr : *it) {
      if (!jr.is_object()) throw ParseError(kModule, "reviews must be objects", line_number);
      Review r;
      r.venue_id = v.id;
      r.author_id = jr.contains("author_id") ? required_string(jr, "author_id", line_number) : "";
      r.text = required_string(jr, "text", line_number);
      r.rating = static_cast<int>(integer_field(jr, "rating", line_number, std::nullopt));
      r.timestamp = integer_field(jr, "timestamp", line_number, 0);
      r.author_review_count = integer_field(jr, "author_review_count", line_number, 0);
      v.reviews.push_back(std::move(r));
    }
  }
  validate_venue(v);
  return v;
}

std::string encode_user(const UserHistory& user) {
  ordered_json j;
  j["user_id"] = user.user_id;
  auto rated = ordered_json::array();
  for (const auto& rv : user.rated_venues) {
    ordered_json e;
    e["venue_id"] = rv.venue_id;
    e["rating"] = rv.rating;
    rated.push_back(std::move(e));
  }
  j["rated_venues"] = std::move(rated);
  if (user.age_group) j["age_group"] = *user.age_group;
  if (user.gender) j["gender"] = *user.gender;
  return dump(j);
}

UserHistory decode_user(std::string_view line, std::size_t line_number) {
  const json j = parse_object(line, line_number);
  UserHistory u;
  u.user_id = required_string(j, "user_id", line_number);
  if (const auto it = j.find("rated_venues"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) {
      throw ParseError(kModule, "field \"rated_venues\" must be an array", line_number);
    }
    for (const auto& e : *it) {
      if (!e.is_object()) throw ParseError(kModule, "rated_venues must be objects", line_number);
      RatedVenue rv;
      rv.venue_id = required_string(e, "venue_id", line_number);
      rv.rating = static_cast<int>(integer_field(e, "rating", line_number, std::nullopt));
      u.rated_venues.push_back(std::move(rv));
    }
  }
  u.age_group = optional_string(j, "age_group", line_number);
  u.gender = optional_string(j, "gender", line_number);
  validate_user(u);
  return u;
}

std::string encode_request(const RankingRequest& request) {
  ordered_json j;
  j["user_id"] = request.user_id;
  j["city"] = request.city;
  j["candidates"] = request.candidates;
  return dump(j);
}

RankingRequest decode_request(std::string_view line, std::size_t line_number) {
  const json j = parse_object(line, line_number);
  RankingRequest r;
  r.user_id = required_string(j, "user_id", line_number);
  r.city = required_string(j, "city", line_number);
  r.candidates = string_list(j, "candidates", line_number);
  return r;
}

std::vector<Venue> read_venues(std::istream& in) { return read_lines(in, decode_venue); }
std::vector<UserHistory> read_users(std::istream& in) { return read_lines(in, decode_user); }
std::vector<RankingRequest> read_requests(std::istream& in) {
  return read_lines(in, decode_request);
}

std::map<std::pair<std::string, std::string>, int> read_qrels(std::istream& in) {
  std::map<std::pair<std::string, std::string>, int> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (skip_line(line)) continue;
    std::istringstream fields(line);
    std::string user, iteration, venue, rating_text, extra;
    if (!(fields >> user >> iteration >> venue >> rating_text) || (fields >> extra)) {
      throw ParseError(kModule, "qrels lines need exactly 4 fields", line_number);
    }
    int rating = 0;
    const auto [ptr, ec] =
        std::from_chars(rating_text.data(), rating_text.data() + rating_text.size(), rating);
    if (ec != std::errc{} || ptr != rating_text.data() + rating_text.size()) {
      throw ParseError(kModule, "qrels rating '" + rating_text + "' is not an integer",
                       line_number);
    }
    if (rating < kMinUserRating || rating > kMaxUserRating) {
      throw ParseError(kModule, "qrels rating " + rating_text + " outside [0,4]", line_number);
    }
    if (!out.emplace(std::pair{user, venue}, rating).second) {
      throw ParseError(kModule, "duplicate qrels entry for (" + user + ", " + venue + ")",
                       line_number);
    }
  }
  return out;
}

void write_qrels(std::ostream& out,
                 const std::map<std::pair<std::string, std::string>, int>& qrels) {
  for (const auto& [key, rating] : qrels) {
    out << key.first << " 0 " << key.second << ' ' << rating << '\n';
  }
}

Collection load_collection(const CollectionPaths& paths) {
  Collection c;
  {
    auto in = open_input(paths.venues);
    for (auto& v : read_venues(in)) {
      const std::string id = v.id;
      if (!c.venues.emplace(id, std::move(v)).second) {
        throw ValidationError(kModule, "duplicate venue id '" + id + "'");
      }
    }
  }
  {
    auto in = open_input(paths.users);
    for (auto& u : read_users(in)) {
      const std::string id = u.user_id;
      if (!c.users.emplace(id, std::move(u)).second) {
        throw ValidationError(kModule, "duplicate user id '" + id + "'");
      }
    }
  }
  {
    auto in = open_input(paths.requests);
    c.requests = read_requests(in);
  }
  {
    auto in = open_input(paths.qrels);
    c.qrels = read_qrels(in);
  }
  validate_collection(c);
  return c;
}

void save_collection(const Collection& collection, const CollectionPaths& paths,
                     std::string_view header) {
  {
    auto out = open_output(paths.venues);
    write_header(out, header);
    for (const auto& [id, venue] : collection.venues) out << encode_venue(venue) << '\n';
  }
  {
    auto out = open_output(paths.users);
    write_header(out, header);
    for (const auto& [id, user] : collection.users) out << encode_user(user) << '\n';
  }
  {
    auto out = open_output(paths.requests);
    write_header(out, header);
    for (const auto& request : collection.requests) out << encode_request(request) << '\n';
  }
  {
    auto out = open_output(paths.qrels);
    write_header(out, header);
    write_qrels(out, collection.qrels);
  }
}

std::string format_score(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buf, ptr);
}

void write_run(std::ostream& out, std::span<const RankedList> ranked, std::string_view tag,
               std::string_view header) {
  for (const auto& list : ranked) {
    std::set<std::string_view> seen;
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      const auto& e = list.entries[i];
      if (!seen.insert(e.venue_id).second) {
        throw ValidationError(kModule, "venue '" + e.venue_id + "' appears twice for user '" +
                                           list.user_id + "'");
      }
      if (i > 0 && e.score > list.entries[i - 1].score) {
        throw ValidationError(kModule, "scores increase down the list for user '" +
                                           list.user_id + "'");
      }
    }
  }
  write_header(out, header);
  for (const auto& list : ranked) {
    const std::size_t n = std::min(list.entries.size(), kMaxRankedListLength);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = list.entries[i];
      out << list.user_id << " Q0 " << e.venue_id << ' ' << (i + 1) << ' '
          << format_score(e.score) << ' ' << tag << '\n';
    }
  }
}

std::vector<RankedList> read_run(std::istream& in) {
  struct Row {
    long rank;
    std::size_t order;
    ScoredVenue entry;
  };
  std::map<std::string, std::vector<Row>> rows;
  std::vector<std::string> user_order;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (skip_line(line)) continue;
    std::istringstream fields(line);
    std::string user, q0, venue, tag, extra;
    long rank = 0;
    double score = 0.0;
    if (!(fields >> user >> q0 >> venue >> rank >> score >> tag) || (fields >> extra)) {
      throw ParseError(kModule, "run lines need 6 fields: user Q0 venue rank score tag",
                       line_number);
    }
    auto [it, inserted] = rows.try_emplace(user);
    if (inserted) user_order.push_back(user);
    it->second.push_back({rank, it->second.size(), {venue, score}});
  }
  std::vector<RankedList> out;
  for (const auto& user : user_order) {
    auto& list = rows[user];
    std::stable_sort(list.begin(), list.end(),
                     [](const Row& a, const Row& b) { return a.rank < b.rank; });
    RankedList ranked{user, {}};
    for (auto& row : list) ranked.entries.push_back(std::move(row.entry));
    out.push_back(std::move(ranked));
  }
  return out;
}

}  // namespace venuerec
