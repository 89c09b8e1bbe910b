#include "surflift/rational.hpp"

#include "surflift/error.hpp"

#include <algorithm>

namespace surflift {

namespace {
constexpr uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    unsigned long long m = v > 0 ? (unsigned long long)v : 0ull - (unsigned long long)v;
    while (m) {
        mag_.push_back((uint32_t)(m & 0xffffffffu));
        m >>= 32;
    }
}

void BigInt::trim(std::vector<uint32_t>& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

BigInt BigInt::with_sign(int s) const {
    BigInt r = *this;
    r.sign_ = r.mag_.empty() ? 0 : s;
    return r;
}

BigInt BigInt::abs() const { return with_sign(sign_ == 0 ? 0 : 1); }
BigInt BigInt::neg() const { return with_sign(-sign_); }

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(std::max(a.size(), b.size()) + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r[i] = (uint32_t)(s & 0xffffffffu);
        carry = s >> 32;
    }
    trim(r);
    return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = (int64_t)a[i] - borrow - (i < b.size() ? (int64_t)b[i] : 0);
        if (s < 0) {
            s += (int64_t)kBase;
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = (uint32_t)s;
    }
    trim(r);
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t s = (uint64_t)a[i] * b[j] + r[i + j] + carry;
            r[i + j] = (uint32_t)(s & 0xffffffffu);
            carry = s >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t s = r[k] + carry;
            r[k] = (uint32_t)(s & 0xffffffffu);
            carry = s >> 32;
            ++k;
        }
    }
    trim(r);
    return r;
}

uint32_t BigInt::divmod_small(std::vector<uint32_t>& u, uint32_t d) {
    uint64_t rem = 0;
    for (size_t i = u.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | u[i];
        u[i] = (uint32_t)(cur / d);
        rem = cur % d;
    }
    trim(u);
    return (uint32_t)rem;
}

/* Schoolbook long division (Knuth 4.3.1 D), magnitudes only. */
void BigInt::divmod_mag(const std::vector<uint32_t>& u_in, const std::vector<uint32_t>& v_in,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    q.clear();
    r.clear();
    if (v_in.empty()) throw ValidationError("division by zero");
    if (cmp_mag(u_in, v_in) < 0) {
        r = u_in;
        return;
    }
    if (v_in.size() == 1) {
        q = u_in;
        uint32_t rem = divmod_small(q, v_in[0]);
        if (rem) r.push_back(rem);
        return;
    }

    int shift = 0;
    uint32_t top = v_in.back();
    while (!(top & 0x80000000u)) {
        top <<= 1;
        ++shift;
    }
    auto shl = [&](const std::vector<uint32_t>& m, int s) {
        std::vector<uint32_t> out(m.size() + 1, 0);
        for (size_t i = 0; i < m.size(); ++i) {
            out[i] |= (uint32_t)((uint64_t)m[i] << s);
            if (s) out[i + 1] = (uint32_t)((uint64_t)m[i] >> (32 - s));
        }
        trim(out);
        return out;
    };
    std::vector<uint32_t> u = shl(u_in, shift);
    std::vector<uint32_t> v = shl(v_in, shift);
    size_t n = v.size(), m = u.size() - n;
    u.resize(u.size() + 1, 0);
    q.assign(m + 1, 0);

    for (size_t j = m + 1; j-- > 0;) {
        uint64_t num = ((uint64_t)u[j + n] << 32) | u[j + n - 1];
        uint64_t qhat = num / v[n - 1];
        uint64_t rhat = num % v[n - 1];
        if (qhat > 0xffffffffu) {
            rhat += (qhat - 0xffffffffu) * v[n - 1];
            qhat = 0xffffffffu;
        }
        while (rhat <= 0xffffffffu &&
               qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
        }
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            int64_t t = (int64_t)u[i + j] - (int64_t)(p & 0xffffffffu) - borrow;
            if (t < 0) {
                t += (int64_t)kBase;
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = (uint32_t)t;
        }
        int64_t t = (int64_t)u[j + n] - (int64_t)carry - borrow;
        if (t < 0) {
            t += (int64_t)kBase;
            u[j + n] = (uint32_t)t;
            --qhat;
            uint64_t c2 = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t s = (uint64_t)u[i + j] + v[i] + c2;
                u[i + j] = (uint32_t)(s & 0xffffffffu);
                c2 = s >> 32;
            }
            u[j + n] = (uint32_t)(u[j + n] + c2);
        } else {
            u[j + n] = (uint32_t)t;
        }
        q[j] = (uint32_t)qhat;
    }

    u.resize(n);
    if (shift) {
        uint32_t carry = 0;
        for (size_t i = u.size(); i-- > 0;) {
            uint32_t cur = u[i];
            u[i] = (cur >> shift) | carry;
            carry = (uint32_t)((uint64_t)cur << (32 - shift));
        }
    }
    trim(u);
    trim(q);
    r = u;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.mag_ = BigInt::add_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_;
        return r;
    }
    int c = BigInt::cmp_mag(a.mag_, b.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
        r.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_;
    } else {
        r.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
        r.sign_ = b.sign_;
    }
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + b.neg(); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    r.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
    r.sign_ = r.mag_.empty() ? 0 : a.sign_ * b.sign_;
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw ValidationError("division by zero");
    divmod_mag(a.mag_, b.mag_, q.mag_, r.mag_);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    BigInt x = a.abs(), y = b.abs();
    while (!y.is_zero()) {
        BigInt q, r;
        divmod(x, y, q, r);
        x = y;
        y = r;
    }
    return x;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c : -c;
}

BigInt BigInt::pow(unsigned long exp) const {
    BigInt result(1), base = *this;
    while (exp) {
        if (exp & 1) result = result * base;
        base = base * base;
        exp >>= 1;
    }
    return result;
}

BigInt BigInt::pow_ll(long long base, unsigned long exp) { return BigInt(base).pow(exp); }

bool BigInt::fits_ll() const {
    if (mag_.size() > 2) return false;
    unsigned long long v = 0;
    for (size_t i = mag_.size(); i-- > 0;) v = (v << 32) | mag_[i];
    if (sign_ >= 0) return v <= 0x7fffffffffffffffull;
    return v <= 0x8000000000000000ull;
}

long long BigInt::to_ll() const {
    if (!fits_ll()) throw ValidationError("BigInt does not fit in long long: " + str());
    unsigned long long v = 0;
    for (size_t i = mag_.size(); i-- > 0;) v = (v << 32) | mag_[i];
    return sign_ >= 0 ? (long long)v : (long long)(0ull - v);
}

std::string BigInt::str() const {
    if (sign_ == 0) return "0";
    std::vector<uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
        uint32_t rem = divmod_small(m, 1000000000u);
        std::string chunk = std::to_string(rem);
        if (!m.empty()) chunk = std::string(9 - chunk.size(), '0') + chunk;
        digits = chunk + digits;
    }
    return (sign_ < 0 ? "-" : "") + digits;
}

BigRational::BigRational(const BigInt& num, const BigInt& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw ValidationError("rational with zero denominator");
    reduce();
}

void BigRational::reduce() {
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.signum() < 0) {
        num_ = num_.neg();
        den_ = den_.neg();
    }
    BigInt g = BigInt::gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
}

bool BigRational::is_integer() const { return den_ == BigInt(1); }

BigRational operator+(const BigRational& a, const BigRational& b) {
    return BigRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

BigRational operator-(const BigRational& a, const BigRational& b) {
    return BigRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

BigRational operator*(const BigRational& a, const BigRational& b) {
    return BigRational(a.num_ * b.num_, a.den_ * b.den_);
}

int BigRational::cmp(const BigRational& a, const BigRational& b) {
    return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
}

double BigRational::to_double() const {
    // Plenty for reporting: exact path is str().
    double n = 0;
    for (char c : num_.str()) {
        if (c == '-') continue;
        n = n * 10 + (c - '0');
    }
    double d = 0;
    for (char c : den_.str()) d = d * 10 + (c - '0');
    double v = n / d;
    return num_.signum() < 0 ? -v : v;
}

std::string BigRational::str() const {
    if (is_integer()) return num_.str();
    return num_.str() + "/" + den_.str();
}

} // namespace surflift
