#include "affsing/number.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace affsing {

namespace {

Real real_from_rational(const Rational& q) {
  // Two-step long double split gives ~128 bits, enough to fill a __float128.
  mpf_class num(q, 256);
  long double hi = static_cast<long double>(num.get_d());
  mpf_class rest = num - mpf_class(static_cast<double>(hi), 256);
  double lo1 = rest.get_d();
  rest -= mpf_class(lo1, 256);
  double lo2 = rest.get_d();
  return static_cast<Real>(hi) + static_cast<Real>(lo1) + static_cast<Real>(lo2);
}

}  // namespace

long double log_abs(Real x) {
  if (x == 0) return -std::numeric_limits<long double>::infinity();
  long double v = static_cast<long double>(x < 0 ? -x : x);
  return std::log(v);
}

long double log_abs(const Rational& x) {
  if (sgn(x) == 0) return -std::numeric_limits<long double>::infinity();
  long en = 0;
  long ed = 0;
  double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::log(std::fabs(static_cast<long double>(mn))) -
         std::log(static_cast<long double>(md)) +
         static_cast<long double>(en - ed) * std::log(2.0L);
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("rational_from_double: non-finite value");
  Rational q(x);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string ExtendedReal::to_string() const {
  if (infinite_) return "inf";
  return format_double(value());
}

Number::Number(const Rational& q) : exact_(q), approx_(real_from_rational(q)) {
  exact_->canonicalize();
}

const Rational& Number::exact() const {
  if (!exact_) throw PrecisionError("Number: exact value requested for an irrational entry");
  return *exact_;
}

Number operator+(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(Rational(*a.exact_ + *b.exact_));
  return Number::real(a.approx_ + b.approx_);
}

Number operator-(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(Rational(*a.exact_ - *b.exact_));
  return Number::real(a.approx_ - b.approx_);
}

Number operator*(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(Rational(*a.exact_ * *b.exact_));
  // An exact zero annihilates regardless of the other factor.
  if ((a.exact_ && sgn(*a.exact_) == 0) || (b.exact_ && sgn(*b.exact_) == 0)) return Number(0);
  return Number::real(a.approx_ * b.approx_);
}

Number Number::operator-() const {
  if (exact_) return Number(Rational(-*exact_));
  return Number::real(-approx_);
}

bool operator==(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  return a.approx_ == b.approx_;
}

std::string Number::to_string() const {
  if (exact_) return exact_->get_str();
  return format_double(static_cast<double>(approx_));
}

Real to_real(const HighPrecision& x) {
  HighPrecision rest = x;
  long double hi = rest.convert_to<long double>();
  rest -= HighPrecision(hi);
  long double lo = rest.convert_to<long double>();
  return static_cast<Real>(hi) + static_cast<Real>(lo);
}

Number ParsedScalar::number() const {
  if (exact) return Number(*exact);
  return Number::real(to_real(value));
}

namespace {

struct Value {
  std::optional<Rational> exact;
  HighPrecision hp;
};

class Parser {
 public:
  Parser(const std::string& text, unsigned bits) : s_(text), bits_(bits) {}

  Value parse() {
    Value v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("cannot parse scalar '" + s_ + "': " + what + " at offset " +
                      std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  HighPrecision make(const Rational& q) const {
    HighPrecision num(0, bits_), den(0, bits_);
    num.precision(bits_);
    den.precision(bits_);
    num = HighPrecision(q.get_num().get_str(), bits_);
    den = HighPrecision(q.get_den().get_str(), bits_);
    HighPrecision r(0, bits_);
    r = num / den;
    return r;
  }

  Value lift(const Rational& q) const { return Value{q, make(q)}; }

  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+')) {
        Value r = term();
        v = combine(v, r, '+');
      } else if (eat('-')) {
        Value r = term();
        v = combine(v, r, '-');
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (eat('*')) {
        Value r = unary();
        v = combine(v, r, '*');
      } else if (eat('/')) {
        Value r = unary();
        v = combine(v, r, '/');
      } else {
        return v;
      }
    }
  }

  Value combine(const Value& a, const Value& b, char op) {
    Value out;
    out.hp.precision(bits_);
    switch (op) {
      case '+':
        out.hp = a.hp + b.hp;
        if (a.exact && b.exact) out.exact = *a.exact + *b.exact;
        break;
      case '-':
        out.hp = a.hp - b.hp;
        if (a.exact && b.exact) out.exact = *a.exact - *b.exact;
        break;
      case '*':
        out.hp = a.hp * b.hp;
        if (a.exact && b.exact) out.exact = *a.exact * *b.exact;
        break;
      case '/':
        if (b.exact ? sgn(*b.exact) == 0 : b.hp == 0) fail("division by zero");
        out.hp = a.hp / b.hp;
        if (a.exact && b.exact) out.exact = *a.exact / *b.exact;
        break;
    }
    if (out.exact) out.exact->canonicalize();
    return out;
  }

  Value unary() {
    if (eat('-')) {
      Value v = unary();
      v.hp = -v.hp;
      if (v.exact) v.exact = -*v.exact;
      return v;
    }
    if (eat('+')) return unary();
    return primary();
  }

  Value primary() {
    skip_ws();
    if (eat('(')) {
      Value v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (!eat('(')) fail("expected '(' after " + name);
      Value arg = expr();
      long k = 0;
      if (name == "root") {
        if (!eat(',')) fail("root(x, k) needs two arguments");
        Value kv = expr();
        if (!kv.exact || kv.exact->get_den() != 1 || *kv.exact < 2) fail("root degree must be an integer >= 2");
        k = kv.exact->get_num().get_si();
      }
      if (!eat(')')) fail("expected ')'");
      if (name == "sqrt") k = 2;
      else if (name == "cbrt") k = 3;
      else if (name != "root") fail("unknown function " + name);
      return root(arg, k);
    }
    return number();
  }

  Value root(const Value& arg, long k) {
    if (arg.hp < 0 && k % 2 == 0) fail("even root of a negative number");
    Value out;
    out.hp.precision(bits_);
    HighPrecision a = boost::multiprecision::abs(arg.hp);
    out.hp = boost::multiprecision::pow(a, HighPrecision(1, bits_) / HighPrecision(k, bits_));
    if (arg.hp < 0) out.hp = -out.hp;
    // Exact only when the rational argument is a perfect k-th power.
    if (arg.exact) {
      Integer num = abs(arg.exact->get_num());
      Integer den = arg.exact->get_den();
      Integer rn, rd;
      bool exact_num = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) != 0;
      bool exact_den = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k) != 0;
      if (exact_num && exact_den) {
        Rational q(rn, rd);
        if (sgn(*arg.exact) < 0) q = -q;
        q.canonicalize();
        out.exact = q;
        out.hp = make(q);
      }
    }
    return out;
  }

  Value number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string int_part = s_.substr(start, pos_ - start);
    std::string frac_part;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      frac_part = s_.substr(fs, pos_ - fs);
    }
    if (int_part.empty() && frac_part.empty()) fail("expected a number");
    long exponent = 0;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      std::size_t es = pos_;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string e = s_.substr(es, pos_ - es);
      if (e.empty() || e == "-" || e == "+") fail("bad exponent");
      exponent = std::stol(e);
    }
    Integer num(int_part.empty() ? "0" : int_part);
    Integer den = 1;
    for (char c : frac_part) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    Rational q(num, den);
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    if (exponent > 0) q *= ten_pow;
    if (exponent < 0) q /= ten_pow;
    q.canonicalize();
    return lift(q);
  }

  std::string s_;
  unsigned bits_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedScalar parse_scalar(const std::string& text, unsigned precision_bits) {
  if (precision_bits < 64) throw ConfigError("precision must be at least 64 bits");
  Parser p(text, precision_bits);
  Value v = p.parse();
  ParsedScalar out;
  out.source = text;
  out.exact = v.exact;
  out.value = v.hp;
  return out;
}

}  // namespace affsing
