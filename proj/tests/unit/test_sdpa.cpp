#include <doctest.h>

#include <random>
#include <sstream>
#include <string>

#include "genus1/error.hpp"
#include "genus1/format.hpp"
#include "genus1/lasserre.hpp"
#include "genus1/sdpa.hpp"

using namespace genus1;

namespace {

int count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) n += line.rfind(prefix, 0) == 0 ? 1 : 0;
  return n;
}

}  // namespace

TEST_SUITE("sdpa") {

TEST_CASE("header of the free 4x4 pencil") {
  const MomentPencil pencil = build_pencil(CurveParams{0.0, 1.0}, SubspaceSpec::linear(), 2);
  const std::string text = export_sdpa(pencil);
  CHECK(text.rfind("7\n1\n4\n", 0) == 0);
}

TEST_CASE("constant-only identity writes two entries for matrix 0") {
  PencilProblem p;
  p.constant = SymMatrix::identity(2);
  const std::string text = write_sdpa(p);
  CHECK(text.rfind("0\n1\n2\n", 0) == 0);
  CHECK(count_lines_starting(text, "0 1 ") == 2);
}

TEST_CASE("constant block is written negated") {
  PencilProblem p;
  p.constant = SymMatrix::identity(1);
  p.coefficients.push_back(SymMatrix::identity(1));
  const std::string text = write_sdpa(p);
  CHECK(text.find("0 1 1 1 -1\n") != std::string::npos);
  CHECK(text.find("1 1 1 1 1\n") != std::string::npos);
}

TEST_CASE("round trip is bit exact") {
  std::mt19937_64 rng(59);
  std::normal_distribution<double> nd(0.0, 1e3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    PencilProblem p;
    p.constant = SymMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) p.constant.set(i, j, (i + j) % 3 == 0 ? 0.0 : nd(rng) / 7.0);
    for (int k = 0; k < trial % 4; ++k) {
      SymMatrix a(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a.set(i, j, nd(rng) * 1e-9);
      p.coefficients.push_back(a);
      p.objective.push_back(nd(rng));
    }
    const PencilProblem back = read_sdpa_string(write_sdpa(p));
    CHECK(back.constant == p.constant);
    REQUIRE(back.coefficients.size() == p.coefficients.size());
    for (std::size_t k = 0; k < p.coefficients.size(); ++k) CHECK(back.coefficients[k] == p.coefficients[k]);
    for (std::size_t k = 0; k < p.objective.size(); ++k) CHECK(back.objective[k] == p.objective[k]);
    CHECK(write_sdpa(back) == write_sdpa(p));
  }
}

TEST_CASE("moment pencils survive the round trip") {
  const MomentPencil pencil = build_pencil(CurveParams{0.3, 0.8}, SubspaceSpec::parse("1,x,x*y"), 3);
  const PencilProblem p = pencil.problem();
  const PencilProblem back = read_sdpa_string(write_sdpa(p));
  CHECK(back.constant == p.constant);
  REQUIRE(back.coefficients.size() == p.coefficients.size());
  for (std::size_t k = 0; k < p.coefficients.size(); ++k) CHECK(back.coefficients[k] == p.coefficients[k]);
}

TEST_CASE("comments are skipped and bad input is rejected") {
  const PencilProblem p = read_sdpa_string("\"a comment\n* another\n1\n1\n2\n0\n0 1 1 1 -2\n1 1 1 2 1\n");
  CHECK(p.constant(0, 0) == 2.0);
  CHECK(p.coefficients.at(0)(0, 1) == 1.0);
  CHECK_THROWS_AS(read_sdpa_string("1\n2\n2 2\n0\n"), Error);   // two blocks
  CHECK_THROWS_AS(read_sdpa_string("1\n1\n2\n0\n0 1 3 1 1\n"), Error);  // index out of range
  CHECK_THROWS_AS(read_sdpa_string("x\n"), Error);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(2.5) == "2.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_list({1.0, -0.5}) == "[1, -0.5]");
  const double v = 0.1 + 0.2;
  CHECK(parse_number(format_exact(v)) == v);
  CHECK_THROWS_AS(parse_number("1.5x"), Error);
}

}  // TEST_SUITE
