#include "qcomb/document.hpp"

#include "qcomb/gallery.hpp"

#include <doctest.h>

using namespace qcomb;

TEST_CASE("exact comb documents round-trip to equal canonical values") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto f = gallery::theorem11_sample(seed, 2, 2, 2, 1);
    doc::AnyComb d{Regime::exact, f};
    std::string text = doc::serialize_comb(d);
    doc::AnyComb back = doc::parse_comb(text, "roundtrip");
    REQUIRE(back.regime == Regime::exact);
    CHECK(comb_equal(std::get<Comb<Rational>>(back.value), f, 0.0));
    // serialized form is a fixed point
    CHECK(doc::serialize_comb(back) == text);
  }
}

TEST_CASE("float comb documents round-trip bit for bit") {
  auto f = gallery::counterexample(3);
  doc::AnyComb d{Regime::floating, f};
  std::string text = doc::serialize_comb(d);
  doc::AnyComb back = doc::parse_comb(text, "roundtrip");
  REQUIRE(back.regime == Regime::floating);
  CHECK(doc::serialize_comb(back) == text);
  const auto& g = std::get<Comb<double>>(back.value);
  REQUIRE(g.components.size() == f.components.size());
  for (size_t i = 0; i < g.components.size(); ++i) {
    CHECK(g.components[i].coset.lattice.generator().entries() ==
          f.components[i].coset.lattice.generator().entries());
    CHECK(g.components[i].terms[0].coeff == f.components[i].terms[0].coeff);
  }
}

TEST_CASE("rational literals: fractions, decimals, exponents") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-7/2") == Rational(-7, 2));
  CHECK(parse_rational("0.75") == Rational(3, 4));
  CHECK(parse_rational("-1.25e2") == Rational(-125));
  CHECK(parse_rational("25e-2") == Rational(1, 4));
  CHECK_THROWS_AS((void)parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("parse errors carry the source and the path") {
  CHECK_THROWS_WITH_AS((void)doc::parse_comb("{", "broken.json"),
                       doctest::Contains("broken.json"), doc::ParseError);

  std::string missing = R"({"type":"comb","regime":"exact","dimension":1,"components":[
    {"lattice": [["1"]], "terms": []}
  ]})";
  CHECK_THROWS_WITH_AS((void)doc::parse_comb(missing, "doc"),
                       doctest::Contains("components[0]"), doc::ParseError);

  std::string singular = R"({"type":"comb","regime":"exact","dimension":2,"components":[
    {"lattice": [["1","0"],["1","0"]], "translate": ["0","0"], "terms": []}
  ]})";
  CHECK_THROWS_WITH_AS((void)doc::parse_comb(singular, "doc"),
                       doctest::Contains("lattice"), doc::ParseError);

  std::string bad_regime = R"({"type":"comb","regime":"quad","dimension":1,"components":[]})";
  CHECK_THROWS_AS((void)doc::parse_comb(bad_regime, "doc"), doc::ParseError);
}

TEST_CASE("test function documents round-trip") {
  TestFunction f(2, 1.5, {0.25, -1.0}, {0.0, 2.0},
                 {PolyTerm{{1, 0}, Complex(0.5, -0.25)}, PolyTerm{{0, 0}, Complex(1.0, 0.0)}});
  std::string text = doc::serialize_testfn(f);
  TestFunction back = doc::parse_testfn(text, "roundtrip");
  CHECK(back.almost_equal(f, 0.0));
  CHECK(doc::serialize_testfn(back) == text);
}

TEST_CASE("exponential sum documents round-trip") {
  ap::ExponentialSum g;
  g.dim = 1;
  g.terms.push_back(ap::ExpTerm{Complex(1.0, -2.0), {0.5}});
  g.terms.push_back(ap::ExpTerm{Complex(0.25, 0.0), {std::sqrt(2.0)}});
  std::string text = doc::serialize_expsum(g);
  auto back = doc::parse_expsum(text, "roundtrip");
  REQUIRE(back.terms.size() == 2);
  CHECK(back.terms[1].freq[0] == g.terms[1].freq[0]);
  CHECK(doc::serialize_expsum(back) == text);
}

TEST_CASE("point lists parse with comments and report bad lines") {
  auto pts = doc::parse_points("0 0\n1 0.5 # trailing comment\n\n# full comment\n-2 3\n", "pts");
  REQUIRE(pts.size() == 3);
  CHECK(pts[1][1] == 0.5);
  CHECK_THROWS_WITH_AS((void)doc::parse_points("0 0\n1 oops\n", "pts"),
                       doctest::Contains("pts:2"), doc::ParseError);
  CHECK_THROWS_AS((void)doc::parse_points("0 0\n1\n", "pts"), doc::ParseError);
}

TEST_CASE("document type sniffing") {
  CHECK(doc::sniff_type("1 2\n3 4\n") == "points");
  CHECK(doc::sniff_type(R"({"type":"comb","regime":"exact"})") == "comb");
  CHECK(doc::sniff_type(R"({"type":"testfn"})") == "testfn");
}
