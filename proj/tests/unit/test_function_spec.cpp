#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "orlicz/errors.hpp"
#include "orlicz/function_spec.hpp"
#include "orlicz/transforms.hpp"

using namespace orlicz;

namespace {

std::size_t parse_error_position(std::string_view spec) {
  try {
    parse_function_spec(spec);
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no ParseError for '" << spec << "'";
  return std::string::npos;
}

}  // namespace

TEST(FunctionSpec, Bases) {
  EXPECT_DOUBLE_EQ(parse_function_spec("power:q=2")(3.0), 9.0);
  EXPECT_DOUBLE_EQ(parse_function_spec("power:q=3,scale=2")(0.5), 0.25);
  const auto pl = parse_function_spec("powerlog:q=1.5,r=2");
  EXPECT_DOUBLE_EQ(pl(1.0), std::pow(1 + std::log(2.0), 2));
}

TEST(FunctionSpec, Modifiers) {
  EXPECT_NEAR(parse_function_spec("power:q=1.5|normalize").kink(), std::pow(2.0, 2.0 / 3.0), 1e-10);
  EXPECT_DOUBLE_EQ(parse_function_spec("power:q=2|extend:T=2").kink(), 2.0);
  const auto s = parse_function_spec("power:q=1.5|normalize|smooth:c=1.1");
  EXPECT_EQ(s.left_eval(s.kink(), 2), 0.0);
  EXPECT_TRUE(is_normalized(s));
}

TEST(FunctionSpec, ErrorPositions) {
  EXPECT_EQ(parse_error_position("power:q=oops"), 8u);
  EXPECT_EQ(parse_error_position("power:q=1.5|bogus"), 12u);
  EXPECT_EQ(parse_error_position("cube:q=2"), 0u);
  EXPECT_EQ(parse_error_position("power:r=2"), 6u);
  EXPECT_EQ(parse_error_position("power:q=2,q=3"), 10u);
  EXPECT_EQ(parse_error_position("power:q=2|smooth:c=0.5"), 17u);
}

TEST(FunctionSpec, ConstructorErrorsBecomeParseErrors) {
  EXPECT_THROW(parse_function_spec("power:q=0.5"), ParseError);
  EXPECT_THROW(parse_function_spec("power:q=2|extend:T=-1"), ParseError);
}

TEST(FunctionSpec, MusielakAndNumberLists) {
  const auto f = parse_musielak_spec("power:q=2;power:q=3|normalize;power:q=1.5");
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(parse_number_list("1, 2.5,-3e2"), (std::vector<double>{1.0, 2.5, -300.0}));
  EXPECT_THROW(parse_number_list("1,,2"), ParseError);
}

TEST(FunctionSpec, SplineTable) {
  const auto path = std::filesystem::temp_directory_path() / "orlicz_spline_test.csv";
  {
    std::ofstream out(path);
    out << "t,M2\n0,2\n1,2\n3,2\n";
  }
  const auto m = parse_function_spec("spline:" + path.string() + "|extend:T=1");
  EXPECT_NEAR(m(0.5), 0.25, 1e-14);
  EXPECT_NEAR(m(2.0), 3.0, 1e-14);
  std::filesystem::remove(path);
  EXPECT_THROW(load_spline_csv(path.string()), InvalidArgument);
}

TEST(TailSpec, Families) {
  const auto pt = parse_tail_spec("point:2");
  EXPECT_EQ(pt(1.0), 1.0);
  EXPECT_EQ(pt(2.0), 0.0);
  EXPECT_EQ(pt.atom_mass_at(2.0), 1.0);
  EXPECT_DOUBLE_EQ(parse_tail_spec("loggamma:2")(2.0), 0.25);
  const auto mx = parse_tail_spec("max:power:q=2|normalize");
  EXPECT_NEAR(mx(4.0), 1.0 / 16.0, 1e-12);
  const auto lp = parse_tail_spec("lp:2:power:q=1.5|normalize");
  EXPECT_NEAR(lp.total_atom_mass(), 0.75, 1e-10);
}

TEST(TailSpec, Errors) {
  EXPECT_THROW(parse_tail_spec("gauss:1"), ParseError);
  EXPECT_THROW(parse_tail_spec("loggamma:0.5"), ParseError);
  try {
    parse_tail_spec("max:power:q=x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 12u);
  }
}
