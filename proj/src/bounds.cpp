#include "rank_arrange/bounds.hpp"

#include "rank_arrange/errors.hpp"
#include "rank_arrange/reference.hpp"

#include <algorithm>

namespace rank_arrange {

RationalInterval RationalInterval::operator*(const RationalInterval& o) const
{
    return {lo * o.lo, hi * o.hi};
}

RationalInterval RationalInterval::pow(unsigned long k) const
{
    return {pow_rational(lo, k), pow_rational(hi, k)};
}

Rational pow_rational(const Rational& x, unsigned long k)
{
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), k);
    Rational out;
    out.get_num() = num;
    out.get_den() = den;
    return out;  // already canonical: gcd(num^k, den^k) = 1
}

RationalInterval e_enclosure(unsigned terms)
{
    Rational sum = 0;
    BigInt fact = 1;
    for (unsigned k = 0; k <= terms; ++k) {
        if (k) fact *= k;
        sum += Rational(1, 1) / Rational(fact);
    }
    fact *= terms + 1;
    return {sum, sum + Rational(2) / Rational(fact)};
}

namespace {

void require_m(std::size_t m, std::size_t min, const char* what)
{
    if (m < min) throw RangeError(std::string(what) + " needs m >= " + std::to_string(min));
}

BigInt exact_quotient(const BigInt& num, const BigInt& den, const char* what)
{
    if (num % den != 0) throw ConsistencyFailure(std::string(what) + ": division is not exact");
    return num / den;
}

const RationalInterval& cached_e()
{
    static const RationalInterval e = e_enclosure();
    return e;
}

RationalInterval ell_interval(std::size_t m)
{
    const Rational l = lower_ell(m);
    return {l, l};
}

}  // namespace

Rational lower_ell(std::size_t m)
{
    require_m(m, 4, "lower_ell");
    const BigInt f = factorial(static_cast<unsigned>(m - 3));
    return Rational(2) * pow_rational(Rational(3, 4), m - 4) * Rational(f * f);
}

RationalInterval upper_u(std::size_t m)
{
    require_m(m, 4, "upper_u");
    const auto mm = static_cast<long>(m);
    const Rational scale(BigInt(mm) * (mm - 1) * (mm - 1), BigInt(8));
    const RationalInterval& e = cached_e();
    const RationalInterval base{e.lo * scale, e.hi * scale};
    const Rational front = Rational(2) / Rational(factorial(static_cast<unsigned>(m)));
    const RationalInterval p = base.pow(m - 2);
    return {front * p.lo, front * p.hi};
}

BigInt a_seq(std::size_t m)
{
    require_m(m, 4, "a_seq");
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), m - 2, m - 3);
    const BigInt num = BigInt(static_cast<unsigned long>(m - 2)) * (p - 1) * factorial(static_cast<unsigned>(m - 4));
    return exact_quotient(num, BigInt(static_cast<unsigned long>(m - 3)), "a(m)");
}

BigInt f_seq(std::size_t m)
{
    require_m(m, 3, "f_seq");
    BigInt num = factorial(static_cast<unsigned>(m * (m - 1) / 2));
    for (std::size_t i = 1; i + 2 <= m; ++i) num *= factorial(static_cast<unsigned>(i));
    BigInt den = 1;
    for (std::size_t i = 1; i + 1 <= m; ++i) den *= factorial(static_cast<unsigned>(2 * i - 1));
    return exact_quotient(num, den, "f(m)");
}

BigInt floor_of_interval(const RationalInterval& x)
{
    const BigInt lo = floor_of(x.lo);
    const BigInt hi = floor_of(x.hi);
    if (lo != hi) throw ConsistencyFailure("enclosure straddles an integer; floor undetermined");
    return hi;
}

std::string group_thousands(const BigInt& x)
{
    std::string digits = BigInt(abs(x)).get_str();
    std::string out;
    const std::size_t n = digits.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i && (n - i) % 3 == 0) out += ',';
        out += digits[i];
    }
    return x < 0 ? "-" + out : out;
}

std::string scientific3(const BigInt& x)
{
    if (x <= 0) throw RangeError("scientific3 needs a positive integer");
    const std::string digits = x.get_str();
    const std::size_t k = digits.size() - 1;
    if (k < 2) throw RangeError("scientific3 needs at least three digits");
    if (digits.find_first_not_of('0', 3) != std::string::npos)
        throw RangeError("scientific3 needs at most three significant digits");
    return digits.substr(0, 1) + "." + digits.substr(1, 2) + " x 10^" + std::to_string(k);
}

namespace {

BigInt pow10(unsigned long k)
{
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
    return p;
}

// Floor of x kept to three significant digits: floor(x / 10^(k-2)) 10^(k-2).
BigInt floor_3sig(const RationalInterval& x)
{
    const BigInt whole = floor_of_interval(x);
    const std::size_t k = whole.get_str().size() - 1;
    const BigInt unit = pow10(k - 2);
    const RationalInterval scaled{x.lo / Rational(unit), x.hi / Rational(unit)};
    return floor_of_interval(scaled) * unit;
}

// Ceiling kept to three significant digits.
BigInt ceil_3sig(const Rational& x)
{
    const std::size_t k = floor_of(x).get_str().size() - 1;
    const BigInt unit = pow10(k - 2);
    return ceil_of(x / Rational(unit)) * unit;
}

}  // namespace

std::vector<BoundsRow> bounds_table(std::size_t m_max)
{
    if (m_max > 12) throw RangeError("bounds_table supports m_max <= 12");
    const auto& ref = reference_data();
    std::vector<BoundsRow> rows;
    for (std::size_t m = 4; m <= m_max; ++m) {
        BoundsRow row;
        row.m = m;
        if (auto it = ref.r0.find(m); it != ref.r0.end()) row.r0 = it->second.value;
        row.a = a_seq(m);
        row.ell = lower_ell(m);
        row.ell_ceil = ceil_of(row.ell);
        row.u = upper_u(m);
        row.u_floor = floor_of_interval(row.u);
        row.f = f_seq(m);

        if (m <= 9) {
            row.ell_display_value = row.ell_ceil;
            row.ell_cell = group_thousands(row.ell_ceil);
        } else if (m == 10) {
            const BigInt unit = pow10(4);
            row.ell_display_value = ceil_of(row.ell / Rational(unit)) * unit;
            row.ell_cell = scientific3(row.ell_display_value);
        } else {
            row.ell_display_value = ceil_3sig(row.ell);
            row.ell_cell = scientific3(row.ell_display_value);
        }
        if (m <= 6) {
            row.u_display_value = row.u_floor;
            row.u_cell = group_thousands(row.u_floor);
        } else {
            row.u_display_value = floor_3sig(row.u);
            row.u_cell = scientific3(row.u_display_value);
        }
        row.r0_cell = row.r0 ? group_thousands(*row.r0) : "";
        row.a_cell = group_thousands(row.a);
        row.f_cell = group_thousands(row.f);
        rows.push_back(std::move(row));
    }
    return rows;
}

RationalInterval asymptotic_limit(AsymptoticSide side)
{
    const RationalInterval& e = cached_e();
    const RationalInterval e2 = e.pow(2);
    if (side == AsymptoticSide::Upper) return {e2.lo / 8, e2.hi / 8};
    return {Rational(3) / (4 * e2.hi), Rational(3) / (4 * e2.lo)};
}

namespace {

RationalInterval side_value(std::size_t m, AsymptoticSide side)
{
    return side == AsymptoticSide::Upper ? upper_u(m) : ell_interval(m);
}

// Sign of x^(1/m)/m^2 - c certified for all x in `value` and c in `limit * ratio`:
// +1 if certainly above, -1 if certainly below, 0 if undecided.
int compare_root(const RationalInterval& value, const RationalInterval& limit, const Rational& ratio, std::size_t m)
{
    const Rational m2(BigInt(static_cast<unsigned long>(m * m)));
    const Rational lo_target = pow_rational(limit.lo * ratio * m2, m);
    const Rational hi_target = pow_rational(limit.hi * ratio * m2, m);
    if (value.lo > hi_target) return 1;
    if (value.hi < lo_target) return -1;
    return 0;
}

}  // namespace

bool asymptotic_within(std::size_t m, AsymptoticSide side, const Rational& tolerance)
{
    const RationalInterval value = side_value(m, side);
    const RationalInterval limit = asymptotic_limit(side);
    return compare_root(value, limit, 1 - tolerance, m) > 0 && compare_root(value, limit, 1 + tolerance, m) < 0;
}

RationalInterval asymptotic_ratio(std::size_t m, AsymptoticSide side, unsigned digits)
{
    const RationalInterval value = side_value(m, side);
    const RationalInterval limit = asymptotic_limit(side);
    const Rational width(BigInt(1), pow10(digits));
    Rational lo = 0, hi = 2;
    if (compare_root(value, limit, hi, m) >= 0) throw RangeError("ratio exceeds 2");
    while (hi - lo > width) {
        const Rational mid = (lo + hi) / 2;
        const int s = compare_root(value, limit, mid, m);
        if (s > 0)
            lo = mid;
        else if (s < 0)
            hi = mid;
        else
            break;  // enclosure too wide to refine further
    }
    return {lo, hi};
}

}  // namespace rank_arrange
