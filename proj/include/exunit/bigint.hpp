#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace exunit {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt pow(std::uint64_t base, std::uint64_t exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

inline BigInt pow(const BigInt& base, std::uint64_t exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return out;
}

inline BigInt from_i64(std::int64_t v) {
  BigInt out = from_u64(v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v));
  if (v < 0) out = -out;
  return out;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

}  // namespace exunit
