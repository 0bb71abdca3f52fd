#pragma once

#include <stdexcept>
#include <string>

namespace ncser {

/// Error raised when an input file or argument does not match its schema.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Error raised when a search would exceed its configured budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A prime field GF(p). Elements are canonical residues in [0, p).
struct FieldSpec {
    long long p;

    explicit FieldSpec(long long prime) : p(prime) {
        if (prime < 2)
            throw std::invalid_argument("field modulus must be >= 2, got " + std::to_string(prime));
        if (prime > (1LL << 30))
            throw std::invalid_argument("field modulus too large: " + std::to_string(prime));
        for (long long d = 2; d * d <= prime; ++d)
            if (prime % d == 0)
                throw std::invalid_argument("field modulus " + std::to_string(prime) + " is not prime");
    }

    bool operator==(const FieldSpec&) const = default;

    long long reduce(long long a) const {
        long long r = a % p;
        return r < 0 ? r + p : r;
    }
    long long add(long long a, long long b) const { return (a + b) % p; }
    long long sub(long long a, long long b) const { return reduce(a - b); }
    long long mul(long long a, long long b) const { return (a * b) % p; }
    long long neg(long long a) const { return reduce(-a); }

    /// Multiplicative inverse by extended Euclid; a must be nonzero mod p.
    long long inv(long long a) const {
        a = reduce(a);
        if (a == 0) throw std::invalid_argument("inverse of zero");
        long long r0 = p, r1 = a, s0 = 0, s1 = 1;
        while (r1 != 0) {
            long long q = r0 / r1;
            long long r2 = r0 - q * r1;
            long long s2 = s0 - q * s1;
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
        }
        return reduce(s0);
    }
};

}  // namespace ncser
