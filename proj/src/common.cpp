#include "qga/common.hpp"

#include <numeric>

namespace qga {

Int ipow(Int base, Int exp) {
    if (exp < 0) fail(Errc::Overflow, "ipow: negative exponent");
    Int r = 1;
    for (Int i = 0; i < exp; ++i) {
        if (base != 0 && r > (INT64_MAX / 8) / (base < 0 ? -base : base))
            fail(Errc::Overflow, "ipow: overflow");
        r *= base;
    }
    return r;
}

Int plog(Int p, Int n) {
    if (n <= 0) fail(Errc::NotPGroup, "plog: nonpositive");
    Int k = 0;
    while (n > 1) {
        if (n % p != 0) fail(Errc::NotPGroup, "plog: not a power of p");
        n /= p;
        ++k;
    }
    return k;
}

bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Int euler_phi(Int n) {
    Int result = n;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            while (n % d == 0) n /= d;
            result -= result / d;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

Int gcd_int(Int a, Int b) { return std::gcd(a, b); }

Int mod_pow(Int b, Int e, Int m) {
    Int r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

Int mod_inv(Int a, Int m) {
    a %= m;
    if (a < 0) a += m;
    Int t = 0, nt = 1, r = m, nr = a;
    while (nr != 0) {
        Int q = r / nr;
        Int tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) fail(Errc::LiftFailure, "mod_inv: not invertible");
    return t < 0 ? t + m : t;
}

}  // namespace qga
