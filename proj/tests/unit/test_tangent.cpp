#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "genus1/error.hpp"
#include "genus1/soscurve.hpp"
#include "genus1/tangent.hpp"
#include "oracles.hpp"

using namespace genus1;

namespace {

// Point on the outer oval of a symmetric curve (0, b), b > 0, at angle-like parameter s.
RealPoint oval_point(double b, double s) {
  const double x = std::cos(s);
  const double y2 = (1.0 - x * x) * (x * x + b);
  return {x, std::copysign(std::sqrt(std::max(0.0, y2)), std::sin(s))};
}

}  // namespace

TEST_SUITE("tangentcert") {

TEST_CASE("tangent_line examples") {
  const CurveParams c{0.0, 1.0};
  const CurveElem top = tangent_line(c, {0.0, 1.0});
  // 1 - y up to positive scale
  CHECK(top.p.coeff(1) == doctest::Approx(0.0).scale(1.0));
  CHECK(top.r.coeff(0) < 0.0);
  CHECK(top.p.coeff(0) == doctest::Approx(-top.r.coeff(0)));

  const CurveElem right = tangent_line(c, {1.0, 0.0});
  CHECK(right.r.is_zero());
  CHECK(right.p.coeff(1) < 0.0);
  CHECK(right.p.coeff(0) == doctest::Approx(-right.p.coeff(1)));

  CHECK_THROWS_AS(tangent_line(c, {0.5, 0.5}), Error);
}

TEST_CASE("tangent at a non-convex point is rejected") {
  // y^2 = 0.05 + 0.95 x^2 - x^4 has a dent around x = 0, y^2 = (1 - x^2)(x^2 + 3) has none
  const CurveParams c{0.0, 3.0};
  const CurveParams dent{0.0, 0.05};
  bool rejected = false;
  for (double x = 0.05; x < 0.9 && !rejected; x += 0.05) {
    const double y = std::sqrt(-dent.q().eval(x));
    try {
      tangent_line(dent, {x, y});
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::TangentNotSupporting;
    }
  }
  CHECK(rejected);
  CHECK_NOTHROW(tangent_line(c, oval_point(3.0, 1.0)));
}

TEST_CASE("tangent data invariants") {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  for (double b : {1.5, 2.0, 4.0}) {
    const CurveParams c{0.0, b};
    const auto pts = sample_real_points(c, 2000);
    for (int i = 0; i < 5; ++i) {
      const RealPoint p = oval_point(b, u(rng));
      const TangentData d = tangent_data(c, p);
      CHECK(std::abs(d.line.eval(p.x, p.y)) <= 1e-9);
      for (const auto& pt : pts) CHECK(d.line.eval(pt.x, pt.y) >= -1e-9);
      CHECK(std::abs(d.conic.eval(-1.0, 0.0)) <= 1e-8);
      CHECK(std::abs(d.conic.eval(1.0, 0.0)) <= 1e-8);
      CHECK(std::abs(d.conic.eval(p.x, p.y)) <= 1e-8);
      CHECK(delta(d.line) <= 2);
      if (d.tag == TangentCase::Generic) {
        // h = f - (x - xi)^2 / gamma is psd and vanishes at p and at the argmax
        auto h = [&](double x, double y) { return d.line.eval(x, y) - (x - p.x) * (x - p.x) / d.gamma; };
        for (const auto& pt : pts) CHECK(h(pt.x, pt.y) >= -1e-8);
        CHECK(std::abs(h(d.argmax.x, d.argmax.y)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("phi_max agrees with a dense one-dimensional scan") {
  for (double b : {2.0, 3.0}) {
    const CurveParams c{0.0, b};
    const RealPoint top{0.0, std::sqrt(b)};
    const TangentData d = tangent_data(c, top);
    REQUIRE(d.tag == TangentCase::Generic);
    // f = sqrt(b) - y up to the unit scale of the line: f = k (sqrt(b) - y)
    const double k = d.line.p.coeff(0) / std::sqrt(b);
    double best = 0.0;
    const int samples = 1000000;
    for (int i = 1; i < samples; ++i) {
      const double x = -1.0 + 2.0 * i / samples;
      const double y = std::sqrt((1.0 - x * x) * (x * x + b));
      for (double yy : {y, -y}) {
        const double f = k * (std::sqrt(b) - yy);
        if (f > 1e-12) best = std::max(best, x * x / f);
      }
    }
    CHECK(d.gamma == doctest::Approx(best).epsilon(1e-5));
  }
}

TEST_CASE("double tangents are recognized") {
  // the top of y^2 = 1 - x^4 has contact order four
  const TangentData d = tangent_data(CurveParams{0.0, 1.0}, {0.0, 1.0});
  CHECK(d.tag == TangentCase::DoubleTangent);
  CHECK(std::isinf(d.gamma));
  // y^2 = (1 - x^2)(x^2 + b) with 0 < b < 1 has a bitangent y = (1 + b)/2
  const double b = 0.5;
  const CurveParams c{0.0, b};
  const double x0 = std::sqrt((1.0 - b) / 2.0);
  const RealPoint p{x0, std::sqrt((1.0 - x0 * x0) * (x0 * x0 + b))};
  CHECK(p.y == doctest::Approx((1.0 + b) / 2.0));
  const TangentData bi = tangent_data(c, p);
  CHECK(bi.tag == TangentCase::DoubleTangent);
  CHECK(bi.argmax.x == doctest::Approx(-x0));
  CHECK(bi.argmax.y == doctest::Approx(p.y));
  CHECK(is_double_tangent(c, p));
  CHECK_FALSE(is_double_tangent(CurveParams{0.0, 2.0}, {0.0, std::sqrt(2.0)}));
}

TEST_CASE("conic_F needs a non-zero eta") {
  try {
    conic_F(CurveParams{}, {1.0, 0.0});
    FAIL("expected EtaZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EtaZero);
  }
}

TEST_CASE("certificate examples") {
  const CurveParams c{0.0, 1.0};
  const SosCertificate base = base_certificate(stability_constant(c.a, c.b));

  const auto vertical = decompose_tangent(c, {1.0, 0.0}, base);
  CHECK(vertical.data.tag == TangentCase::VerticalTangent);
  CHECK(vertical.sos.residual <= 1e-6);
  CHECK(vertical.gamma_coeff > 0.0);

  const auto top = decompose_tangent(c, {0.0, 1.0}, base);
  CHECK(top.sos.residual <= 1e-6);
  for (const auto& s : top.sos.summands) CHECK(delta(s) <= 2);

  const double x = 0.5;
  const auto generic = decompose_tangent(c, {x, std::sqrt(1.0 - std::pow(x, 4))}, base);
  CHECK(generic.data.tag == TangentCase::Generic);
  CHECK(generic.sos.residual <= 1e-6);
  CHECK(generic.constant > 0.0);
  for (const auto& s : generic.sos.summands) CHECK(delta(s) <= 2);

  const std::string text = serialize(generic);
  CHECK(text.rfind("curve a=0 b=1\n", 0) == 0);
  CHECK(text.find("\ncase generic\n") != std::string::npos);
  CHECK(text.find("\nresidual ") != std::string::npos);
}

TEST_CASE("invalid base certificates are rejected") {
  const CurveParams c{0.0, 1.0};
  SosCertificate bogus;
  bogus.target = CurveElem(CurveParams::extreme_root_product(), Poly{});
  bogus.summands = {CurveElem::x()};
  try {
    decompose_tangent(c, {1.0, 0.0}, bogus);
    FAIL("expected BaseCertificateInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BaseCertificateInvalid);
  }
}

TEST_CASE("certificates on random points of symmetric curves") {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> ub(1.0, 5.0);
  std::uniform_real_distribution<double> us(0.0, 2.0 * std::numbers::pi);
  for (int curve = 0; curve < 3; ++curve) {
    const double b = ub(rng);
    const CurveParams c{0.0, b};
    const auto st = stability_constant(c.a, c.b);
    REQUIRE(st.N == 2);
    const SosCertificate base = base_certificate(st);
    const auto pts = oracle::curve_points(c.a, c.b, 40);
    for (int i = 0; i < 4; ++i) {
      const RealPoint p = oval_point(b, us(rng));
      const auto cert = decompose_tangent(c, p, base);
      CHECK(cert.sos.residual <= 1e-6);
      CHECK((sum_of_squares(cert.sos.summands, c.q()) - cert.data.line).norm_inf() <= 1e-6);
      for (const auto& s : cert.sos.summands) CHECK(delta(s) <= st.N);
      for (const auto& pt : pts) CHECK(cert.data.line.eval(pt.x, pt.y) >= -1e-9);
    }
  }
}

}  // TEST_SUITE
