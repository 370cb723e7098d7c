#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "sscov/config.hpp"
#include "sscov/errors.hpp"

using namespace sscov;
using namespace sscov::config;

TEST_CASE("parse sections") {
  const auto f = parse_config(
      "# comment\n"
      "[simulate]\n"
      "family = \"sparse_bernoulli\"\n"
      "p = 50\n"
      "n = 100\n"
      "lambda = 2.5\n"
      "; another comment\n"
      "[other]\n"
      "x = 1\n");
  CHECK(f.sections.size() == 2);
  const auto& s = f.section("simulate");
  CHECK(s.at("family") == "sparse_bernoulli");
  const auto cfg = ensemble_config(s);
  CHECK(cfg.family == ensemble::Family::SparseBernoulli);
  CHECK(cfg.p == 50);
  CHECK(cfg.n == 100);
  CHECK(cfg.lambda == 2.5);
  CHECK_THROWS_AS(f.section("missing"), ConfigError);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("x = 1\n[simulate]\np = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[simulate]\np = 1\np = 2\n"), ConfigError);
  CHECK_THROWS_AS(ensemble_config({{"colour", "red"}}), ConfigError);
  CHECK_THROWS_AS(ensemble_config({{"p", "ten"}}), ConfigError);
  CHECK_THROWS_AS(ensemble_config({{"p", "-3"}}), ConfigError);
  CHECK_THROWS_AS(ensemble_config({{"family", "cauchy"}}), ConfigError);
  CHECK_THROWS_AS(ensemble_config({{"family", "dt_triangular"}, {"p", "3"}, {"n", "4"}}), ConfigError);
  CHECK_THROWS_AS(ensemble_config({{"family", "triangular_iid"}}), ConfigError);
  CHECK_THROWS_AS(ensemble_config({{"max_moment", "9"}}), SizeLimitError);
  CHECK_THROWS_AS(read_config("/nonexistent/sscov.toml"), ConfigError);
  CHECK_NOTHROW(ensemble_config({{"gnuplot", "true"}}, "", {"gnuplot"}));
}

TEST_CASE("lists, booleans and truncation") {
  CHECK(parse_list("[1, 2.5, 3]", "k") == std::vector<double>{1, 2.5, 3});
  CHECK(parse_list("4,5", "k") == std::vector<double>{4, 5});
  CHECK_THROWS_AS(parse_list("[1, 2", "k"), ConfigError);
  CHECK_THROWS_AS(parse_list("[]", "k"), ConfigError);
  CHECK_THROWS_AS(parse_list("[1, x]", "k"), ConfigError);
  CHECK(parse_bool("yes", "b"));
  CHECK_FALSE(parse_bool("0", "b"));
  CHECK_THROWS_AS(parse_bool("maybe", "b"), ConfigError);

  const auto cfg = ensemble_config({{"t_n", "n^-1/3"}, {"n", "1000"}, {"p", "10"}, {"c_sequence", "[1, 2]"},
                                    {"family", "triangular_iid"}, {"bin_edges", "[0, 1, 2]"}});
  CHECK(cfg.t_n.level(1000) == doctest::Approx(0.1));
  CHECK(cfg.c_sequence == std::vector<double>{1, 2});
  CHECK(cfg.bin_edges->size() == 3);
}

TEST_CASE("relative grid profiles resolve against the config directory") {
  const auto dir = std::filesystem::temp_directory_path() / "sscov_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream g(dir / "sigma.csv");
    g << "1,2\n3,4\n";
    std::ofstream c(dir / "run.toml");
    c << "[simulate]\nfamily = variance_profile\nprofile = grid:sigma.csv\np = 2\nn = 2\n";
  }
  const auto f = read_config((dir / "run.toml").string());
  const auto cfg = ensemble_config(f.section("simulate"), f.directory());
  CHECK(cfg.profile.fn(1, 1, 2, 2) == 1.0);
  CHECK(cfg.profile.fn(2, 2, 2, 2) == 4.0);
  std::filesystem::remove_all(dir);
}
