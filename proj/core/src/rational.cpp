#include "semired/rational.hpp"

#include <cctype>

#include "semired/errors.hpp"

namespace semired {

long valuation(const mpz_class& x, unsigned long p) {
  if (x == 0) return kInfiniteValuation;
  mpz_class t = abs(x);
  long v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

long valuation(const Rational& x, unsigned long p) {
  if (x == 0) return kInfiniteValuation;
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

mpz_class prime_power(unsigned long p, unsigned long e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), p, e);
  return out;
}

mpz_class reduce_mod(const Rational& x, unsigned long p, unsigned long m) {
  if (valuation(x, p) < 0)
    throw Error(ErrorKind::NegativeValuation, format_rational(x) + " is not in the valuation ring");
  const mpz_class q = prime_power(p, m);
  mpz_class den_inv;
  // den is prime to p, hence invertible mod p^m.
  if (mpz_invert(den_inv.get_mpz_t(), x.get_den_mpz_t(), q.get_mpz_t()) == 0 && q != 1)
    throw Error(ErrorKind::NegativeValuation, "denominator not invertible");
  mpz_class out = (x.get_num() * den_inv) % q;
  if (out < 0) out += q;
  return out;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view token) {
  auto fail = [&]() -> Rational {
    throw Error(ErrorKind::Parse, "malformed rational '" + std::string(token) + "'");
  };
  std::string_view body = token;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) return fail();
  const mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) return fail();
  Rational out(n, d);
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

std::string format_rational(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace semired
