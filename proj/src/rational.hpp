#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace chvip {

// Exact rational number. mpq_class keeps values canonical (reduced,
// positive denominator), which is exactly the invariant the certificate
// format requires.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

// Parses "p" or "p/q". Returns nothing unless the token is already in
// canonical form: reduced, q >= 1, no signs on the denominator, no
// superfluous characters. Certificate files must use canonical literals.
inline std::optional<Rational> parse_rational_strict(const std::string& tok) {
    if (tok.empty()) return std::nullopt;
    for (size_t i = 0; i < tok.size(); ++i) {
        char c = tok[i];
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9'))) return std::nullopt;
    }
    Rational q;
    if (q.set_str(tok, 10) != 0) return std::nullopt;
    q.canonicalize();
    if (q.get_str() != tok) return std::nullopt;
    return q;
}

inline Rational rat_floor(const Rational& q) {
    Integer z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(z);
}

inline Rational rat_ceil(const Rational& q) {
    Integer z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(z);
}

inline bool is_integral(const Rational& q) {
    return q.get_den() == 1;
}

}  // namespace chvip
