#include "qcomb/document.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace qcomb {

namespace {

// cpp_int's string constructor treats a leading 0 as octal; decimal digit
// strings must be stripped first
BigInt parse_decimal_bigint(std::string s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("malformed integer literal '" + s + "'");
  size_t nz = s.find_first_not_of('0');
  if (nz == std::string::npos)
    return BigInt(0);
  s.erase(0, nz);
  BigInt v(s);
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty numeric literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num = parse_decimal_bigint(s.substr(0, slash));
    BigInt den = parse_decimal_bigint(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  // decimal or scientific literal -> exact rational
  size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  long long exponent = 0;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      exponent = std::stoll(s.substr(pos + 1));
      break;
    } else {
      throw std::invalid_argument("malformed numeric literal '" + text + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed numeric literal '" + text + "'");
  BigInt num = parse_decimal_bigint(digits.empty() ? "0" : digits);
  if (neg) num = -num;
  long long net = exponent - frac_digits;
  BigInt scale = 1;
  for (long long i = 0; i < std::llabs(net); ++i) scale *= 10;
  return net >= 0 ? Rational(num * scale) : Rational(num, scale);
}

double parse_double(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos)
    return ScalarOps<Rational>::to_double(parse_rational(text));
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (!end || *end != '\0')
    throw std::invalid_argument("malformed numeric literal '" + text + "'");
  return v;
}

}  // namespace qcomb

namespace qcomb::doc {

namespace {

using json = nlohmann::ordered_json;

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

[[noreturn]] void fail(const std::string& source, const std::string& path,
                       const std::string& msg) {
  throw ParseError(source + ": " + path + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& source,
                  const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) fail(source, path, std::string("missing field '") + key + "'");
  return *it;
}

std::string str_of(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_string()) fail(source, path, "expected a numeric string");
  return j.get<std::string>();
}

template <class S>
Vec<S> parse_vector(const json& j, int dim, const std::string& source, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(source, path, "expected an array of " + std::to_string(dim) + " numeric strings");
  Vec<S> v(dim);
  for (int i = 0; i < dim; ++i) {
    try {
      v[i] = parse_scalar<S>(str_of(j[i], source, path));
    } catch (const std::invalid_argument& e) {
      fail(source, path + "[" + std::to_string(i) + "]", e.what());
    }
  }
  return v;
}

MultiIndex parse_multiindex(const json& j, int dim, const std::string& source,
                            const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(source, path, "expected an array of " + std::to_string(dim) + " nonnegative integers");
  MultiIndex k(dim);
  for (int i = 0; i < dim; ++i) {
    if (!j[i].is_number_integer() || j[i].get<long long>() < 0)
      fail(source, path, "expected nonnegative integers");
    k[i] = static_cast<int>(j[i].get<long long>());
  }
  return k;
}

Complex parse_complex(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(source, path, "expected [re, im] numeric strings");
  return Complex(parse_double(str_of(j[0], source, path)),
                 parse_double(str_of(j[1], source, path)));
}

template <class S>
Comb<S> parse_comb_body(const json& j, int dim, const std::string& source) {
  Comb<S> f;
  f.dim = dim;
  const json& comps = field(j, "components", source, "$");
  if (!comps.is_array()) fail(source, "components", "expected an array");
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    std::string base = "components[" + std::to_string(ci) + "]";
    const json& c = comps[ci];
    const json& gen = field(c, "lattice", source, base);
    if (!gen.is_array() || static_cast<int>(gen.size()) != dim)
      fail(source, base + ".lattice", "expected " + std::to_string(dim) + " generator rows");
    SquareMatrix<S> t(dim);
    for (int r = 0; r < dim; ++r) {
      Vec<S> row = parse_vector<S>(gen[r], dim, source, base + ".lattice");
      for (int cix = 0; cix < dim; ++cix) t(r, cix) = row[cix];
    }
    Lattice<S> lattice = [&] {
      try {
        return Lattice<S>(t);
      } catch (const std::invalid_argument& e) {
        fail(source, base + ".lattice", e.what());
      }
    }();
    Vec<S> shift = parse_vector<S>(field(c, "translate", source, base), dim, source,
                                   base + ".translate");
    CombComponent<S> comp{Coset<S>(lattice, shift), {}};
    const json& terms = field(c, "terms", source, base);
    if (!terms.is_array()) fail(source, base + ".terms", "expected an array");
    for (size_t ti = 0; ti < terms.size(); ++ti) {
      std::string tp = base + ".terms[" + std::to_string(ti) + "]";
      const json& t2 = terms[ti];
      CombTerm<S> term;
      term.deriv = parse_multiindex(field(t2, "k", source, tp), dim, source, tp + ".k");
      term.monomial = parse_multiindex(field(t2, "m", source, tp), dim, source, tp + ".m");
      term.freq = parse_vector<S>(field(t2, "omega", source, tp), dim, source, tp + ".omega");
      term.coeff = parse_complex(field(t2, "c", source, tp), source, tp + ".c");
      if (order(term.deriv) > kMaxDerivativeOrder)
        fail(source, tp + ".k", "derivative order exceeds configured maximum");
      comp.terms.push_back(std::move(term));
    }
    f.components.push_back(std::move(comp));
  }
  return f;
}

template <class S>
json comb_to_json(const Comb<S>& f, const char* regime) {
  Comb<S> g = collect(f);
  json j;
  j["type"] = "comb";
  j["regime"] = regime;
  j["dimension"] = g.dim;
  json comps = json::array();
  for (const auto& comp : g.components) {
    json c;
    json gen = json::array();
    for (int r = 0; r < g.dim; ++r) {
      json row = json::array();
      for (int cix = 0; cix < g.dim; ++cix)
        row.push_back(ScalarOps<S>::to_string(comp.coset.lattice.generator()(r, cix)));
      gen.push_back(row);
    }
    c["lattice"] = gen;
    json tr = json::array();
    for (const auto& s : comp.coset.shift) tr.push_back(ScalarOps<S>::to_string(s));
    c["translate"] = tr;
    json terms = json::array();
    for (const auto& t : comp.terms) {
      json tj;
      tj["k"] = t.deriv;
      tj["m"] = t.monomial;
      json om = json::array();
      for (const auto& w : t.freq) om.push_back(ScalarOps<S>::to_string(w));
      tj["omega"] = om;
      tj["c"] = json::array({format_double(t.coeff.real()), format_double(t.coeff.imag())});
      terms.push_back(tj);
    }
    c["terms"] = terms;
    comps.push_back(c);
  }
  j["components"] = comps;
  return j;
}

}  // namespace

AnyComb parse_comb(const std::string& text, const std::string& source) {
  json j = parse_json(text, source);
  std::string type = field(j, "type", source, "$").get<std::string>();
  if (type != "comb") fail(source, "type", "expected a comb document, got '" + type + "'");
  std::string regime = field(j, "regime", source, "$").get<std::string>();
  const json& dj = field(j, "dimension", source, "$");
  if (!dj.is_number_integer() || dj.get<long long>() <= 0)
    fail(source, "dimension", "expected a positive integer");
  int dim = static_cast<int>(dj.get<long long>());
  AnyComb out;
  if (regime == "exact") {
    out.regime = Regime::exact;
    out.value = parse_comb_body<Rational>(j, dim, source);
  } else if (regime == "float") {
    out.regime = Regime::floating;
    out.value = parse_comb_body<double>(j, dim, source);
  } else {
    fail(source, "regime", "expected 'exact' or 'float'");
  }
  return out;
}

std::string serialize_comb(const AnyComb& comb) {
  json j = comb.regime == Regime::exact
               ? comb_to_json(std::get<Comb<Rational>>(comb.value), "exact")
               : comb_to_json(std::get<Comb<double>>(comb.value), "float");
  return j.dump(2) + "\n";
}

TestFunction parse_testfn(const std::string& text, const std::string& source) {
  json j = parse_json(text, source);
  std::string type = field(j, "type", source, "$").get<std::string>();
  if (type != "testfn") fail(source, "type", "expected a testfn document, got '" + type + "'");
  const json& dj = field(j, "dimension", source, "$");
  if (!dj.is_number_integer() || dj.get<long long>() <= 0)
    fail(source, "dimension", "expected a positive integer");
  int dim = static_cast<int>(dj.get<long long>());
  double a = parse_double(str_of(field(j, "a", source, "$"), source, "a"));
  auto x0 = to_double_vec(parse_vector<double>(field(j, "x0", source, "$"), dim, source, "x0"));
  auto xi0 = to_double_vec(parse_vector<double>(field(j, "xi0", source, "$"), dim, source, "xi0"));
  std::vector<PolyTerm> poly;
  const json& pj = field(j, "poly", source, "$");
  if (!pj.is_array()) fail(source, "poly", "expected an array");
  for (size_t i = 0; i < pj.size(); ++i) {
    std::string path = "poly[" + std::to_string(i) + "]";
    const json& term = pj[i];
    if (!term.is_array() || term.size() != 3) fail(source, path, "expected [re, im, [m...]]");
    PolyTerm t;
    t.coeff = Complex(parse_double(str_of(term[0], source, path)),
                      parse_double(str_of(term[1], source, path)));
    t.alpha = parse_multiindex(term[2], dim, source, path);
    poly.push_back(std::move(t));
  }
  try {
    return TestFunction(dim, a, x0, xi0, poly);
  } catch (const std::invalid_argument& e) {
    fail(source, "$", e.what());
  }
}

std::string serialize_testfn(const TestFunction& fn) {
  json j;
  j["type"] = "testfn";
  j["dimension"] = fn.dim();
  j["a"] = format_double(fn.width());
  json x0 = json::array(), xi0 = json::array();
  for (double v : fn.center()) x0.push_back(format_double(v));
  for (double v : fn.modulation()) xi0.push_back(format_double(v));
  j["x0"] = x0;
  j["xi0"] = xi0;
  json poly = json::array();
  for (const auto& t : fn.poly())
    poly.push_back(json::array(
        {format_double(t.coeff.real()), format_double(t.coeff.imag()), json(t.alpha)}));
  j["poly"] = poly;
  return j.dump(2) + "\n";
}

ap::ExponentialSum parse_expsum(const std::string& text, const std::string& source) {
  json j = parse_json(text, source);
  std::string type = field(j, "type", source, "$").get<std::string>();
  if (type != "expsum") fail(source, "type", "expected an expsum document, got '" + type + "'");
  const json& dj = field(j, "dimension", source, "$");
  if (!dj.is_number_integer() || dj.get<long long>() <= 0)
    fail(source, "dimension", "expected a positive integer");
  int dim = static_cast<int>(dj.get<long long>());
  ap::ExponentialSum g;
  g.dim = dim;
  const json& terms = field(j, "terms", source, "$");
  if (!terms.is_array()) fail(source, "terms", "expected an array");
  for (size_t i = 0; i < terms.size(); ++i) {
    std::string path = "terms[" + std::to_string(i) + "]";
    const json& t = terms[i];
    if (!t.is_array() || t.size() != 3) fail(source, path, "expected [re, im, [s...]]");
    ap::ExpTerm term;
    term.coeff = Complex(parse_double(str_of(t[0], source, path)),
                         parse_double(str_of(t[1], source, path)));
    term.freq = to_double_vec(parse_vector<double>(t[2], dim, source, path));
    g.terms.push_back(std::move(term));
  }
  return g;
}

std::string serialize_expsum(const ap::ExponentialSum& g) {
  json j;
  j["type"] = "expsum";
  j["dimension"] = g.dim;
  json terms = json::array();
  for (const auto& t : g.terms) {
    json freq = json::array();
    for (double v : t.freq) freq.push_back(format_double(v));
    terms.push_back(
        json::array({format_double(t.coeff.real()), format_double(t.coeff.imag()), freq}));
  }
  j["terms"] = terms;
  return j.dump(2) + "\n";
}

std::vector<std::vector<double>> parse_points(const std::string& text, const std::string& source) {
  std::vector<std::vector<double>> pts;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  size_t dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<double> p;
    std::string tok;
    while (ls >> tok) {
      try {
        p.push_back(parse_double(tok));
      } catch (const std::invalid_argument& e) {
        throw ParseError(source + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (p.empty()) continue;
    if (dim == 0) dim = p.size();
    if (p.size() != dim)
      throw ParseError(source + ":" + std::to_string(lineno) + ": inconsistent dimension");
    pts.push_back(std::move(p));
  }
  return pts;
}

std::string sniff_type(const std::string& text) {
  size_t pos = text.find_first_not_of(" \t\r\n");
  if (pos == std::string::npos || text[pos] != '{') return "points";
  try {
    json j = json::parse(text);
    if (j.contains("type") && j["type"].is_string()) return j["type"].get<std::string>();
  } catch (...) {
  }
  return "points";
}

}  // namespace qcomb::doc
