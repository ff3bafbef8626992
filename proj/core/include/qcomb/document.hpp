#pragma once

// One JSON-based document format for combs, test functions, exponential sums
// and plain point lists.  Numbers travel as strings ("p/q" or decimal
// literals) so the exact regime round-trips losslessly; doubles are written
// with 17 significant digits, which also round-trips bit for bit.

#include "qcomb/almost_periodic.hpp"
#include "qcomb/comb.hpp"
#include "qcomb/schwartz.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qcomb::doc {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnyComb {
  Regime regime = Regime::exact;
  std::variant<Comb<Rational>, Comb<double>> value;

  int dim() const {
    return std::visit([](const auto& c) { return c.dim; }, value);
  }
  AnyComb collected() const {
    AnyComb out;
    out.regime = regime;
    std::visit([&](const auto& c) { out.value = collect(c); }, value);
    return out;
  }
};

AnyComb parse_comb(const std::string& text, const std::string& source = "<input>");
std::string serialize_comb(const AnyComb& comb);

TestFunction parse_testfn(const std::string& text, const std::string& source = "<input>");
std::string serialize_testfn(const TestFunction& fn);

ap::ExponentialSum parse_expsum(const std::string& text, const std::string& source = "<input>");
std::string serialize_expsum(const ap::ExponentialSum& g);

// one point per line, coordinates whitespace-separated; '#' starts a comment
std::vector<std::vector<double>> parse_points(const std::string& text,
                                              const std::string& source = "<input>");

// "comb" | "testfn" | "expsum" | "points"
std::string sniff_type(const std::string& text);

}  // namespace qcomb::doc
