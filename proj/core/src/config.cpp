#include "venuerec/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "venuerec/error.hpp"
#include "venuerec/random.hpp"

namespace venuerec {

namespace {

constexpr const char* kModule = "config";

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool valid_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.' || c == '-';
  });
}

template <typename T>
T parse_number(std::string_view key, const std::string& text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(kModule, "key '" + std::string(key) + "': '" + text + "' is not a number");
  }
  return value;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, std::string_view source) {
  KeyValueConfig config;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(line_number);
    if (eq == std::string::npos) throw ConfigError(kModule, where + ": expected key = value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (!valid_key(key)) throw ConfigError(kModule, where + ": invalid key '" + key + "'");
    if (!config.entries_.emplace(key, std::move(value)).second) {
      throw ConfigError(kModule, where + ": duplicate key '" + key + "'");
    }
  }
  return config;
}

KeyValueConfig KeyValueConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(kModule, "cannot read config file '" + path.string() + "'");
  return parse(in, path.string());
}

void KeyValueConfig::set(std::string key, std::string value) {
  if (!valid_key(key)) throw ConfigError(kModule, "invalid key '" + key + "'");
  entries_[std::move(key)] = trim(value);
}

bool KeyValueConfig::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_string(std::string_view key, std::string_view fallback) const {
  const auto v = get(key);
  return v ? *v : std::string(fallback);
}

std::string KeyValueConfig::require_string(std::string_view key) const {
  const auto v = get(key);
  if (!v || v->empty()) throw ConfigError(kModule, "missing required key '" + std::string(key) + "'");
  return *v;
}

std::int64_t KeyValueConfig::get_int(std::string_view key, std::int64_t fallback) const {
  const auto v = get(key);
  return v ? parse_number<std::int64_t>(key, *v) : fallback;
}

std::uint64_t KeyValueConfig::get_uint(std::string_view key, std::uint64_t fallback) const {
  const auto v = get(key);
  return v ? parse_number<std::uint64_t>(key, *v) : fallback;
}

double KeyValueConfig::get_double(std::string_view key, double fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::istringstream in(*v);
  double value = 0.0;
  char extra = 0;
  if (!(in >> value) || (in >> extra)) {
    throw ConfigError(kModule, "key '" + std::string(key) + "': '" + *v + "' is not a number");
  }
  return value;
}

std::vector<std::string> KeyValueConfig::get_list(std::string_view key,
                                                  std::vector<std::string> fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(*v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> KeyValueConfig::get_int_list(std::string_view key,
                                              std::vector<int> fallback) const {
  if (!has(key)) return fallback;
  std::vector<int> out;
  for (const auto& item : get_list(key)) out.push_back(parse_number<int>(key, item));
  return out;
}

std::string KeyValueConfig::canonical_text() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

std::string KeyValueConfig::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical_text())));
  return buf;
}

SyntheticSpec synthetic_spec_from(const KeyValueConfig& c) {
  SyntheticSpec s;
  const auto i = [&](std::string_view key, int fallback) {
    return static_cast<int>(c.get_int(key, fallback));
  };
  s.n_users = i("n_users", s.n_users);
  s.n_venues = i("n_venues", s.n_venues);
  s.n_keywords_vocab = i("n_keywords_vocab", s.n_keywords_vocab);
  s.n_categories_vocab = i("n_categories_vocab", s.n_categories_vocab);
  s.reviews_per_venue_min = i("reviews_per_venue_min", s.reviews_per_venue_min);
  s.reviews_per_venue_max = i("reviews_per_venue_max", s.reviews_per_venue_max);
  s.preference_dimensions = i("preference_dimensions", s.preference_dimensions);
  s.n_cities = i("n_cities", s.n_cities);
  s.history_size = i("history_size", s.history_size);
  s.candidates_per_user = i("candidates_per_user", s.candidates_per_user);
  if (!c.has("seed")) throw ConfigError(kModule, "missing required key 'seed'");
  s.seed = c.get_uint("seed", 0);
  s.validate();
  return s;
}

ExperimentConfig ExperimentConfig::from(const KeyValueConfig& c) {
  ExperimentConfig e;
  if (!c.has("seed")) throw ConfigError(kModule, "missing required key 'seed'");
  e.seed = c.get_uint("seed", 0);

  const std::filesystem::path dir = c.get_string("dataset_dir", ".");
  e.dataset = CollectionPaths::in_directory(dir);
  if (auto v = c.get("venues")) e.dataset.venues = *v;
  if (auto v = c.get("users")) e.dataset.users = *v;
  if (auto v = c.get("requests")) e.dataset.requests = *v;
  if (auto v = c.get("qrels")) e.dataset.qrels = *v;
  e.output_dir = c.get_string("output_dir", "results");

  e.variants = c.get_list("variants", {"LTR-All", "LTR-S", "LTR-C", "LTR-Y", "LTR-F",
                                       "LinearCatRev"});
  if (e.variants.empty()) throw ConfigError(kModule, "'variants' lists no model variant");
  for (const auto& v : e.variants) (void)FeatureSpec::variant(v);
  const bool has_baseline =
      std::find(e.variants.begin(), e.variants.end(), "LinearCatRev") != e.variants.end();
  e.reference = c.get_string("reference", has_baseline ? "LinearCatRev" : e.variants.front());
  if (std::find(e.variants.begin(), e.variants.end(), e.reference) == e.variants.end()) {
    throw ConfigError(kModule, "reference variant '" + e.reference + "' is not in 'variants'");
  }

  e.ranker = parse_ranker_kind(c.get_string("ranker", "pairwise-neural"));
  for (const auto& name : c.get_list("ranker_table")) e.ranker_table.push_back(parse_ranker_kind(name));
  e.random_permutations = static_cast<int>(c.get_int("random.permutations", 100));
  if (e.random_permutations < 1) throw ConfigError(kModule, "random.permutations must be >= 1");

  e.cv.folds = static_cast<int>(c.get_int("cv.folds", 5));
  e.cv.seed_grid = static_cast<int>(c.get_int("cv.seed_grid", 3));
  e.cv.seed = e.seed;
  e.cv.kind = e.ranker;
  if (e.cv.folds < 2) throw ConfigError(kModule, "cv.folds must be >= 2");
  if (e.cv.seed_grid < 1) throw ConfigError(kModule, "cv.seed_grid must be >= 1");

  auto& r = e.cv.ranker;
  r.pairwise_neural.hidden_units =
      static_cast<int>(c.get_int("neural.hidden_units", r.pairwise_neural.hidden_units));
  r.pairwise_neural.learning_rate =
      c.get_double("neural.learning_rate", r.pairwise_neural.learning_rate);
  r.pairwise_neural.epochs = static_cast<int>(c.get_int("neural.epochs", r.pairwise_neural.epochs));
  r.coordinate_ascent.grid_points =
      static_cast<int>(c.get_int("ca.grid_points", r.coordinate_ascent.grid_points));
  r.coordinate_ascent.restarts =
      static_cast<int>(c.get_int("ca.restarts", r.coordinate_ascent.restarts));
  r.coordinate_ascent.max_cycles =
      static_cast<int>(c.get_int("ca.max_cycles", r.coordinate_ascent.max_cycles));
  r.adarank.max_rounds = static_cast<int>(c.get_int("adarank.max_rounds", r.adarank.max_rounds));
  r.linear_interpolation.step = c.get_double("interpolation.step", r.linear_interpolation.step);
  r.set_seed(e.seed);

  auto& s = e.features.solver;
  s.C = c.get_double("svm.c", s.C);
  s.tolerance = c.get_double("svm.tolerance", s.tolerance);
  s.max_passes = static_cast<int>(c.get_int("svm.max_passes", s.max_passes));
  s.seed = derive_seed(e.seed, "svm");
  if (s.C <= 0.0) throw ConfigError(kModule, "svm.c must be positive");

  e.sweep_axis = parse_sweep_axis(c.get_string("sweep.axis", "reviews"));
  const std::vector<std::string> default_criteria =
      e.sweep_axis == SweepAxis::reviews
          ? std::vector<std::string>{"random", "recent", "active"}
          : std::vector<std::string>{"venue-random", "user-random", "user-popular"};
  for (const auto& name : c.get_list("sweep.criteria", default_criteria)) {
    e.sweep_criteria.push_back(parse_sweep_criterion(name));
  }
  // sweep.k_values applies to every criterion; sweep.k_values.<criterion>
  // overrides it for one.
  for (const auto criterion : e.sweep_criteria) {
    std::vector<int> fallback;
    switch (criterion) {
      case SweepCriterion::random:
      case SweepCriterion::recent:
      case SweepCriterion::active: fallback = {0, 1, 2, 4, 8, 12, 16}; break;
      case SweepCriterion::venue_random: fallback = {0, 5, 10, 15, 20}; break;
      case SweepCriterion::user_random:
      case SweepCriterion::user_popular: fallback = {0, 10, 20, 50, 100, 160, 300}; break;
    }
    const auto shared = c.get_int_list("sweep.k_values", fallback);
    e.sweep_k_values.push_back(
        c.get_int_list("sweep.k_values." + std::string(to_string(criterion)), shared));
  }
  e.sweep_repeats = static_cast<int>(c.get_int("sweep.repeats", 5));
  for (const auto& sc : e.sweep_configs()) sc.validate();

  e.config_hash = c.hash_hex();
  return e;
}

void ExperimentConfig::validate_paths() const {
  for (const auto* p : {&dataset.venues, &dataset.users, &dataset.requests, &dataset.qrels}) {
    if (!std::filesystem::is_regular_file(*p)) {
      throw ConfigError(kModule, "dataset file '" + p->string() + "' does not exist");
    }
  }
}

std::vector<SweepConfig> ExperimentConfig::sweep_configs() const {
  std::vector<SweepConfig> out;
  for (std::size_t i = 0; i < sweep_criteria.size(); ++i) {
    SweepConfig sc;
    sc.axis = sweep_axis;
    sc.criterion = sweep_criteria[i];
    sc.k_values = sweep_k_values[i];
    sc.n_random_repeats = sweep_repeats;
    sc.seed = derive_seed(seed, "sweep");
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace venuerec
