#include <gtest/gtest.h>

#include <sstream>

#include "dlimit/config.hpp"
#include "dlimit/errors.hpp"

using namespace dlimit;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace

TEST(Config, EmptyFileGivesDefaults) {
  EXPECT_EQ(parse("").hash(), ExperimentConfig{}.hash());
}

TEST(Config, ShippedDefaultMatchesBuiltIn) {
  const ExperimentConfig c = load_config(DLIMIT_SOURCE_DIR "/configs/default.ini");
  EXPECT_EQ(c.hash_hex(), ExperimentConfig{}.hash_hex());
  EXPECT_EQ(c.output_dir, "out");
}

TEST(Config, ParsesEverySection) {
  const ExperimentConfig c = parse(R"(
# comment
[grid]
n = 32
active_dims = 3
[eos]
gamma = 1.4
[sweep]
epsilons = 0.1, 0.01
t_final = 0.25
dt = 0.0125
s_list = 0, 1, 2, 4
gamma_s = 1
scheme = strang
[ic]
amp = 0.2
seed = 18446744073709551615
[output]
dir = results ; trailing
)");
  EXPECT_EQ(c.n, 32);
  EXPECT_EQ(c.active_dims, 3);
  EXPECT_DOUBLE_EQ(c.gamma, 1.4);
  ASSERT_EQ(c.epsilons.size(), 2u);
  EXPECT_DOUBLE_EQ(c.epsilons[1], 0.01);
  EXPECT_DOUBLE_EQ(c.dt, 0.0125);
  EXPECT_EQ(c.s_list.size(), 4u);
  EXPECT_EQ(c.scheme, EmScheme::strang);
  EXPECT_EQ(c.seed, 18446744073709551615ull);
  EXPECT_EQ(c.output_dir, "results");
}

TEST(Config, RejectsUnknownKeysAndSections) {
  EXPECT_THROW(parse("[grid]\nnn = 32\n"), UsageError);
  EXPECT_THROW(parse("[solver]\nn = 32\n"), UsageError);
  EXPECT_THROW(parse("n = 32\n"), UsageError);
}

TEST(Config, RejectsBadValues) {
  EXPECT_THROW(parse("[grid]\nn = 30\n"), UsageError);
  EXPECT_THROW(parse("[grid]\nn = abc\n"), UsageError);
  EXPECT_THROW(parse("[sweep]\nepsilons = 0.01, 0.1\n"), UsageError);
  EXPECT_THROW(parse("[sweep]\ns_list = 0, 2\n"), UsageError);
  EXPECT_THROW(parse("[sweep]\ngamma_s = 3\n"), UsageError);
  EXPECT_THROW(parse("[sweep]\nscheme = euler\n"), UsageError);
  EXPECT_THROW(parse("[ic]\namp = 0.5\n"), UsageError);
  EXPECT_THROW(parse("[eos]\ngamma = 1\n"), UsageError);
}

TEST(Config, HashIgnoresOutputDirOnly) {
  ExperimentConfig a, b;
  b.output_dir = "elsewhere";
  EXPECT_EQ(a.hash(), b.hash());
  b.seed += 1;
  EXPECT_NE(a.hash(), b.hash());
  ExperimentConfig c;
  c.epsilons.back() = 2.5e-3;
  EXPECT_NE(a.hash(), c.hash());
  EXPECT_EQ(a.hash_hex().size(), 16u);
}

TEST(Config, Fnv1aReference) {
  // Published FNV-1a 64 test vectors.
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ull);
}

TEST(Config, SchemeNamesRoundTrip) {
  for (EmScheme s : {EmScheme::exponential, EmScheme::strang, EmScheme::explicit_rk3})
    EXPECT_EQ(parse_scheme(scheme_name(s)), s);
}
