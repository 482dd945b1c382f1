#include "tbtd/field.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <regex>

namespace tbtd {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::NotAnnihilated: return "NotAnnihilated";
        case ErrorCode::DuplicateEigenvalue: return "DuplicateEigenvalue";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::CharacteristicTwo: return "CharacteristicTwo";
        case ErrorCode::InvalidArray: return "InvalidArray";
        case ErrorCode::NoBeta: return "NoBeta";
        case ErrorCode::BetaInvalid: return "BetaInvalid";
        case ErrorCode::CharacteristicViolation: return "CharacteristicViolation";
        case ErrorCode::QConditionViolation: return "QConditionViolation";
        case ErrorCode::BannaiItoOddDiameter: return "BannaiItoOddDiameter";
        case ErrorCode::Unclassifiable: return "Unclassifiable";
        case ErrorCode::NotRecurrent: return "NotRecurrent";
        case ErrorCode::NoQInField: return "NoQInField";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::NotSelfDual: return "NotSelfDual";
        case ErrorCode::NoSquareRootInField: return "NoSquareRootInField";
        case ErrorCode::RelationViolation: return "RelationViolation";
        case ErrorCode::KappaMismatch: return "KappaMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

namespace detail {

struct FieldData {
    bool prime = false;
    mpz_class p = 0;
    bool ext = false;
    mpq_class D = 0;
    const FieldData* base = nullptr;
    std::string spec;
};

}  // namespace detail

using detail::FieldData;

namespace {

mpz_ptr num(mpq_class& x) { return mpq_numref(x.get_mpq_t()); }
mpz_srcptr num(const mpq_class& x) { return mpq_numref(x.get_mpq_t()); }

// Base-field arithmetic. For prime fields every value is an integer in [0, p).

void reduce(const FieldData* f, mpq_class& x) {
    if (!f->prime) return;
    if (x.get_den() == 1) {
        mpz_mod(num(x), num(x), f->p.get_mpz_t());
        return;
    }
    mpz_class den = x.get_den();
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), f->p.get_mpz_t()) == 0)
        throw Error(ErrorCode::DivisionByZero, "denominator divisible by the characteristic");
    mpz_class n = x.get_num() * inv;
    mpz_mod(n.get_mpz_t(), n.get_mpz_t(), f->p.get_mpz_t());
    x = n;
}

void badd(const FieldData* f, mpq_class& r, const mpq_class& x, const mpq_class& y) {
    if (f->prime) {
        mpz_add(num(r), num(x), num(y));
        if (mpz_cmp(num(r), f->p.get_mpz_t()) >= 0) mpz_sub(num(r), num(r), f->p.get_mpz_t());
    } else {
        mpq_add(r.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
    }
}

void bsub(const FieldData* f, mpq_class& r, const mpq_class& x, const mpq_class& y) {
    if (f->prime) {
        mpz_sub(num(r), num(x), num(y));
        if (mpz_sgn(num(r)) < 0) mpz_add(num(r), num(r), f->p.get_mpz_t());
    } else {
        mpq_sub(r.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
    }
}

void bmul(const FieldData* f, mpq_class& r, const mpq_class& x, const mpq_class& y) {
    if (f->prime) {
        mpz_mul(num(r), num(x), num(y));
        mpz_mod(num(r), num(r), f->p.get_mpz_t());
    } else {
        mpq_mul(r.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
    }
}

mpq_class bneg(const FieldData* f, const mpq_class& x) {
    mpq_class r;
    bsub(f, r, mpq_class(0), x);
    return r;
}

mpq_class binv(const FieldData* f, const mpq_class& x) {
    if (sgn(x) == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (!f->prime) return 1 / x;
    mpz_class r;
    mpz_invert(r.get_mpz_t(), num(x), f->p.get_mpz_t());
    return mpq_class(r);
}

// Tonelli-Shanks; p an odd prime, x a residue in [0, p).
std::optional<mpz_class> sqrt_mod(const mpz_class& x, const mpz_class& p) {
    if (x == 0) return mpz_class(0);
    if (p == 2) return x;
    if (mpz_legendre(x.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
    mpz_class q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    mpz_class z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    mpz_class c, t, r, e;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    e = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        mpz_class t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        mpz_class b = c;
        for (unsigned long k = 0; k + 1 < m - i; ++k) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

std::optional<mpq_class> bsqrt(const FieldData* f, const mpq_class& x) {
    if (f->prime) {
        auto r = sqrt_mod(x.get_num(), f->p);
        if (!r) return std::nullopt;
        return mpq_class(*r);
    }
    if (sgn(x) < 0) return std::nullopt;
    mpz_class n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

std::string base_str(const FieldData* f, const mpq_class& x) {
    (void)f;
    return x.get_str();
}

std::string make_spec(const FieldData& fd) {
    if (!fd.ext) return fd.prime ? "Fp:" + fd.p.get_str() : "Q";
    if (!fd.prime) return fd.D == -1 ? "Q(i)" : "Q(sqrt:" + fd.D.get_str() + ")";
    if (fd.D == mpq_class(least_nonresidue(fd.p))) return "Fp2:" + fd.p.get_str();
    return "Fp(sqrt:" + fd.D.get_str() + "):" + fd.p.get_str();
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

const FieldData* intern(FieldData fd) {
    static std::map<std::string, std::unique_ptr<FieldData>> registry;
    fd.spec = make_spec(fd);
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry.find(fd.spec);
    if (it != registry.end()) return it->second.get();
    auto owned = std::make_unique<FieldData>(std::move(fd));
    const FieldData* raw = owned.get();
    registry.emplace(raw->spec, std::move(owned));
    return raw;
}

const std::string kRat = R"((-?[0-9]+(?:/[0-9]+)?))";

mpq_class parse_rational(const std::string& s) {
    mpq_class r;
    if (r.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
    if (r.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

mpz_class least_nonresidue(const mpz_class& p) {
    if (p <= 2) throw Error(ErrorCode::InvalidArgument, "no quadratic nonresidue mod " + p.get_str());
    mpz_class n = 2;
    while (mpz_legendre(n.get_mpz_t(), p.get_mpz_t()) != -1) ++n;
    return n;
}

// ---------------------------------------------------------------- Field

Field Field::rationals() {
    static const FieldData* q = intern(FieldData{});
    return Field(q);
}

Field Field::prime(const mpz_class& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw Error(ErrorCode::InvalidArgument, p.get_str() + " is not prime");
    FieldData fd;
    fd.prime = true;
    fd.p = p;
    return Field(intern(std::move(fd)));
}

Field Field::quadratic(const Field& base, const FieldElement& D) {
    if (base.is_extension()) throw Error(ErrorCode::InvalidArgument, "only one extension layer is supported");
    if (D.field() != base) throw Error(ErrorCode::FieldMismatch, "D must lie in the base field");
    if (bsqrt(base.d_, D.a())) throw Error(ErrorCode::InvalidArgument, D.to_string() + " is a square in " + base.spec());
    FieldData fd;
    fd.prime = base.d_->prime;
    fd.p = base.d_->p;
    fd.ext = true;
    fd.D = D.a();
    fd.base = base.d_;
    return Field(intern(std::move(fd)));
}

Field Field::parse(std::string_view spec_in) {
    std::string spec = trim(spec_in);
    std::smatch m;
    if (spec == "Q") return rationals();
    if (spec == "Q(i)") return quadratic(rationals(), rationals().from_int(-1));
    if (std::regex_match(spec, m, std::regex(R"(Q\(sqrt:)" + kRat + R"(\))")))
        return quadratic(rationals(), rationals().from_rational(parse_rational(m[1])));
    if (std::regex_match(spec, m, std::regex(R"(Fp:([0-9]+))"))) return prime(mpz_class(m[1].str()));
    if (std::regex_match(spec, m, std::regex(R"(Fp2:([0-9]+))"))) {
        Field b = prime(mpz_class(m[1].str()));
        return quadratic(b, b.from_mpz(least_nonresidue(b.characteristic())));
    }
    if (std::regex_match(spec, m, std::regex(R"(Fp\(sqrt:(-?[0-9]+)\):([0-9]+))"))) {
        Field b = prime(mpz_class(m[2].str()));
        return quadratic(b, b.from_mpz(mpz_class(m[1].str())));
    }
    throw Error(ErrorCode::ParseError, "unknown field descriptor '" + spec + "'");
}

const std::string& Field::spec() const { return d_->spec; }
const mpz_class& Field::characteristic() const { return d_->p; }
bool Field::is_prime_base() const { return d_->prime; }
bool Field::is_extension() const { return d_->ext; }
Field Field::base() const { return d_->ext ? Field(d_->base) : *this; }

FieldElement Field::ext_d() const {
    if (!d_->ext) throw Error(ErrorCode::InvalidArgument, spec() + " is not an extension field");
    return FieldElement(d_->base, d_->D, 0);
}

FieldElement Field::sqrt_d() const {
    if (!d_->ext) throw Error(ErrorCode::InvalidArgument, spec() + " is not an extension field");
    return FieldElement(d_, 0, 1);
}

FieldElement Field::zero() const { return FieldElement(d_, 0, 0); }
FieldElement Field::one() const { return FieldElement(d_, 1, 0); }
FieldElement Field::from_int(long long n) const { return from_mpz(mpz_class(static_cast<long>(n))); }
FieldElement Field::from_mpz(const mpz_class& n) const { return from_rational(mpq_class(n)); }

FieldElement Field::from_rational(const mpq_class& x) const {
    mpq_class a = x;
    reduce(d_, a);
    return FieldElement(d_, std::move(a), 0);
}

FieldElement Field::parse_element(std::string_view text_in) const {
    std::string text = trim(text_in);
    std::smatch m;
    auto check_p = [&](const std::ssub_match& g) {
        if (!d_->prime || mpz_class(g.str()) != d_->p)
            throw Error(ErrorCode::FieldMismatch, "'" + text + "' does not belong to " + spec());
    };
    if (std::regex_match(text, m, std::regex("^" + kRat + "$"))) return from_rational(parse_rational(m[1]));
    if (std::regex_match(text, m, std::regex("^" + kRat + " mod ([0-9]+)$"))) {
        check_p(m[2]);
        return from_rational(parse_rational(m[1]));
    }
    if (std::regex_match(text, m,
                         std::regex("^" + kRat + R"(\+)" + kRat + R"(\*sqrt\()" + kRat + R"(\)(?: mod ([0-9]+))?$)"))) {
        if (!d_->ext) throw Error(ErrorCode::FieldMismatch, "'" + text + "' does not belong to " + spec());
        if (m[4].matched)
            check_p(m[4]);
        else if (d_->prime)
            throw Error(ErrorCode::FieldMismatch, "'" + text + "' lacks the modulus of " + spec());
        mpq_class D = parse_rational(m[3]);
        reduce(d_, D);
        if (D != d_->D) throw Error(ErrorCode::FieldMismatch, "'" + text + "' uses a different sqrt than " + spec());
        mpq_class a = parse_rational(m[1]), b = parse_rational(m[2]);
        reduce(d_, a);
        reduce(d_, b);
        return FieldElement(d_, std::move(a), std::move(b));
    }
    throw Error(ErrorCode::ParseError, "cannot parse element '" + text + "'");
}

// --------------------------------------------------------- FieldElement

FieldElement::FieldElement(const FieldData* f, mpq_class a, mpq_class b) : f_(f), a_(std::move(a)), b_(std::move(b)) {}

Field FieldElement::field() const {
    if (!f_) throw Error(ErrorCode::FieldMismatch, "unset field element");
    return Field(f_);
}

void FieldElement::check(const FieldElement& o) const {
    if (f_ != o.f_ || !f_) throw Error(ErrorCode::FieldMismatch, "operands belong to different fields");
}

FieldElement FieldElement::operator-() const {
    check(*this);
    return FieldElement(f_, bneg(f_, a_), bneg(f_, b_));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check(o);
    badd(f_, a_, a_, o.a_);
    if (f_->ext) badd(f_, b_, b_, o.b_);
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check(o);
    bsub(f_, a_, a_, o.a_);
    if (f_->ext) bsub(f_, b_, b_, o.b_);
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check(o);
    if (!f_->ext) {
        bmul(f_, a_, a_, o.a_);
        return *this;
    }
    mpq_class ac, bd, ad, bc;
    bmul(f_, ac, a_, o.a_);
    bmul(f_, bd, b_, o.b_);
    bmul(f_, bd, bd, f_->D);
    bmul(f_, ad, a_, o.b_);
    bmul(f_, bc, b_, o.a_);
    badd(f_, a_, ac, bd);
    badd(f_, b_, ad, bc);
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inv(); }

FieldElement FieldElement::inv() const {
    check(*this);
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (!f_->ext) return FieldElement(f_, binv(f_, a_), 0);
    mpq_class aa, bb, n;
    bmul(f_, aa, a_, a_);
    bmul(f_, bb, b_, b_);
    bmul(f_, bb, bb, f_->D);
    bsub(f_, n, aa, bb);
    mpq_class ni = binv(f_, n);
    mpq_class ra, rb;
    bmul(f_, ra, a_, ni);
    bmul(f_, rb, bneg(f_, b_), ni);
    return FieldElement(f_, std::move(ra), std::move(rb));
}

FieldElement FieldElement::pow(long long n) const {
    check(*this);
    if (n < 0) return inv().pow(-n);
    FieldElement result = Field(f_).one();
    FieldElement base = *this;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

FieldElement FieldElement::conj() const {
    check(*this);
    return FieldElement(f_, a_, bneg(f_, b_));
}

std::optional<FieldElement> FieldElement::sqrt() const {
    check(*this);
    std::optional<FieldElement> root;
    if (!f_->ext) {
        if (auto r = bsqrt(f_, a_)) root = FieldElement(f_, *r, 0);
    } else if (sgn(b_) == 0) {
        if (auto r = bsqrt(f_, a_)) {
            root = FieldElement(f_, *r, 0);
        } else {
            mpq_class q;
            bmul(f_, q, a_, binv(f_, f_->D));
            if (auto s = bsqrt(f_, q)) root = FieldElement(f_, 0, *s);
        }
    } else {
        // (x + y sqrt(D))^2 = a + b sqrt(D)  <=>  x^2 + D y^2 = a, 2xy = b.
        mpq_class aa, bb, n;
        bmul(f_, aa, a_, a_);
        bmul(f_, bb, b_, b_);
        bmul(f_, bb, bb, f_->D);
        bsub(f_, n, aa, bb);
        if (auto s = bsqrt(f_, n)) {
            mpq_class half = binv(f_, mpq_class(2));
            for (const mpq_class& sg : {*s, bneg(f_, *s)}) {
                mpq_class x2;
                badd(f_, x2, a_, sg);
                bmul(f_, x2, x2, half);
                auto x = bsqrt(f_, x2);
                if (!x || sgn(*x) == 0) continue;
                mpq_class y;
                bmul(f_, y, b_, binv(f_, 2 * *x));
                if (f_->prime) reduce(f_, y);
                root = FieldElement(f_, *x, y);
                break;
            }
        }
    }
    if (!root) return std::nullopt;
    FieldElement neg = -*root;
    return encoding_less(neg, *root) ? neg : *root;
}

std::string FieldElement::to_string() const {
    if (!f_) return "<unset>";
    std::string s = base_str(f_, a_);
    if (f_->ext) s += "+" + base_str(f_, b_) + "*sqrt(" + base_str(f_, f_->D) + ")";
    if (f_->prime) s += " mod " + f_->p.get_str();
    return s;
}

void mul_add(FieldElement& acc, const FieldElement& x, const FieldElement& y, mpq_class& tmp) {
    acc.check(x);
    acc.check(y);
    const FieldData* f = acc.f_;
    if (!f->ext) {
        if (f->prime) {
            mpz_addmul(num(acc.a_), num(x.a_), num(y.a_));
            mpz_mod(num(acc.a_), num(acc.a_), f->p.get_mpz_t());
        } else {
            mpq_mul(tmp.get_mpq_t(), x.a_.get_mpq_t(), y.a_.get_mpq_t());
            mpq_add(acc.a_.get_mpq_t(), acc.a_.get_mpq_t(), tmp.get_mpq_t());
        }
        return;
    }
    FieldElement p = x;
    p *= y;
    acc += p;
}

bool encoding_less(const FieldElement& x, const FieldElement& y) {
    std::string sx = x.to_string(), sy = y.to_string();
    if (sx.size() != sy.size()) return sx.size() < sy.size();
    return sx < sy;
}

}  // namespace tbtd
