#ifndef LIESYM_RATIONAL_HPP
#define LIESYM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace liesym {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return rat_den(q) == 1; }

inline long to_long(const Int& n) {
    if (n > std::numeric_limits<long>::max() || n < std::numeric_limits<long>::min())
        throw Error("integer too large: " + n.str());
    return static_cast<long>(n);
}

inline std::string rat_str(const Rat& q) {
    if (is_integer(q)) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

inline double rat_double(const Rat& q) { return static_cast<double>(q); }

/// q^n for integer n (n < 0 requires q != 0).
inline Rat rat_pow(const Rat& q, long n) {
    if (n == 0) return Rat(1);
    if (q == 0) {
        if (n > 0) return Rat(0);
        throw Error("division by zero in rational power");
    }
    Rat base = n > 0 ? q : Rat(1) / q;
    unsigned long e = n > 0 ? static_cast<unsigned long>(n) : static_cast<unsigned long>(-n);
    Rat out(1);
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

inline Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { Int t = a % b; a = b; b = t; }
    return a;
}

/// gcd on Q: gcd(p1/q1, p2/q2) = gcd(p1,p2)/lcm(q1,q2); gcd(x,0) = |x|.
inline Rat rat_gcd(const Rat& x, const Rat& y) {
    if (x == 0) return y < 0 ? Rat(-y) : y;
    if (y == 0) return x < 0 ? Rat(-x) : x;
    Int pn = int_gcd(rat_num(x), rat_num(y));
    Int dl = rat_den(x) / int_gcd(rat_den(x), rat_den(y)) * rat_den(y);
    return Rat(pn, dl);
}

inline int rat_cmp(const Rat& a, const Rat& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

inline std::size_t hash_combine(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline std::size_t rat_hash(const Rat& q) {
    std::size_t h = std::hash<std::string>{}(rat_num(q).str());
    return hash_combine(h, std::hash<std::string>{}(rat_den(q).str()));
}

} // namespace liesym

#endif
