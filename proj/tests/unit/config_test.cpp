#include <gtest/gtest.h>

#include <sstream>

#include "venuerec/config.hpp"
#include "venuerec/error.hpp"

using namespace venuerec;

namespace {

KeyValueConfig parse(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in);
}

}  // namespace

TEST(KeyValue, ParsesEntriesAndComments) {
  const auto c = parse("# comment\nseed = 4\n\n  name=LTR-S \nlist = a, b ,c\n");
  EXPECT_EQ(c.get_int("seed", 0), 4);
  EXPECT_EQ(c.get_string("name", ""), "LTR-S");
  EXPECT_EQ(c.get_list("list"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_FALSE(c.has("missing"));
  EXPECT_EQ(c.get_double("missing", 1.5), 1.5);
}

TEST(KeyValue, Errors) {
  EXPECT_THROW(parse("seed = 1\nseed = 2\n"), ConfigError);
  EXPECT_THROW(parse("no equals sign\n"), ConfigError);
  EXPECT_THROW(parse("seed = abc\n").get_int("seed", 0), ConfigError);
}

TEST(KeyValue, HashIgnoresOrderAndSpacing) {
  const auto a = parse("a = 1\nb = 2\n");
  const auto b = parse("b=2\n# x\na =   1\n");
  EXPECT_EQ(a.hash_hex(), b.hash_hex());
  EXPECT_EQ(a.hash_hex().size(), 16u);
  EXPECT_NE(a.hash_hex(), parse("a = 1\nb = 3\n").hash_hex());
}

TEST(Experiment, SeedIsMandatory) {
  EXPECT_THROW(ExperimentConfig::from(parse("dataset_dir = x\n")), ConfigError);
  EXPECT_THROW(synthetic_spec_from(parse("n_users = 3\n")), ConfigError);
}

TEST(Experiment, Defaults) {
  const auto e = ExperimentConfig::from(parse("seed = 9\n"));
  EXPECT_EQ(e.variants.size(), 6u);
  EXPECT_EQ(e.reference, "LinearCatRev");
  EXPECT_EQ(e.cv.folds, 5);
  EXPECT_EQ(e.random_permutations, 100);
  EXPECT_EQ(e.ranker, RankerKind::pairwise_neural);
}

TEST(Experiment, ReferenceFallsBackToFirstVariant) {
  const auto e = ExperimentConfig::from(parse("seed = 9\nvariants = LTR-S, LTR-C\n"));
  EXPECT_EQ(e.reference, "LTR-S");
}

TEST(Experiment, RejectsUnknownNames) {
  EXPECT_THROW(ExperimentConfig::from(parse("seed = 1\nvariants = LTR-Q\n")), ConfigError);
  EXPECT_THROW(ExperimentConfig::from(parse("seed = 1\nranker = listnet\n")), ConfigError);
  EXPECT_THROW(ExperimentConfig::from(parse("seed = 1\nsweep.axis = photos\n")), ConfigError);
  EXPECT_THROW(ExperimentConfig::from(parse("seed = 1\nsweep.criteria = recent\nsweep.axis = keywords\n")),
               ConfigError);
}

TEST(Experiment, SweepKValuesPerCriterion) {
  const auto e = ExperimentConfig::from(
      parse("seed = 1\nsweep.axis = keywords\nsweep.k_values = 0, 10\n"
            "sweep.k_values.venue-random = 0, 5\n"));
  const auto configs = e.sweep_configs();
  ASSERT_EQ(configs.size(), 3u);
  EXPECT_EQ(configs[0].k_values, (std::vector<int>{0, 5}));
  EXPECT_EQ(configs[1].k_values, (std::vector<int>{0, 10}));
}

TEST(Experiment, MissingDatasetFiles) {
  const auto e = ExperimentConfig::from(parse("seed = 1\ndataset_dir = /nonexistent/venuerec\n"));
  EXPECT_THROW(e.validate_paths(), ConfigError);
}

TEST(SyntheticSpecKeys, ReadsFields) {
  const auto s = synthetic_spec_from(parse("seed = 3\nn_users = 12\nn_venues = 90\n"));
  EXPECT_EQ(s.seed, 3u);
  EXPECT_EQ(s.n_users, 12);
  EXPECT_EQ(s.n_venues, 90);
}
