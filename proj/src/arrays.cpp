#include "tbtd/arrays.hpp"

#include <algorithm>

namespace tbtd {

namespace {

std::string idx(const char* name, std::size_t i) { return std::string(name) + "_" + std::to_string(i); }

void require_char_not_two(const Field& f) {
    if (f.characteristic() == 2) throw Error(ErrorCode::CharacteristicTwo, "characteristic 2 is not supported");
}

void check_distinct(const Vector& s, const char* name, std::vector<Violation>& out) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j]) {
                out.push_back({"distinct", idx(name, i) + " = " + idx(name, j) + " = " + s[i].to_string()});
                return;
            }
}

void check_antisymmetric(const Vector& s, const char* name, std::vector<Violation>& out) {
    const std::size_t d = s.size() - 1;
    for (std::size_t i = 0; i <= d / 2; ++i) {
        FieldElement sum = s[i] + s[d - i];
        if (!sum.is_zero()) {
            out.push_back({"antisymmetry", idx(name, i) + " + " + idx(name, d - i) + " = " + sum.to_string() + " != 0"});
            return;
        }
    }
}

FieldElement two(const Field& f) { return f.from_int(2); }

// Fills s from two consecutive known entries s[m], s[m+1] by the recurrence.
Vector propagate(const FieldElement& beta, std::size_t d, std::size_t m, FieldElement sm, FieldElement sm1) {
    Vector s(d + 1, beta.field().zero());
    s[m] = std::move(sm);
    s[m + 1] = std::move(sm1);
    for (std::size_t i = m + 1; i + 1 <= d; ++i) s[i + 1] = beta * s[i] - s[i - 1];
    for (std::size_t i = m + 1; i-- > 1;) s[i - 1] = beta * s[i] - s[i + 1];
    return s;
}

bool char_exceeds(const Field& f, std::size_t d) {
    return f.characteristic() == 0 || f.characteristic() > static_cast<unsigned long>(d);
}

}  // namespace

// ------------------------------------------------------------ validation

ValidationResult validate_array(const Field& field, const Vector& theta, const Vector& theta_star) {
    if (theta.size() != theta_star.size())
        throw Error(ErrorCode::LengthMismatch, "theta and theta_star differ in length");
    if (theta.size() < 2) throw Error(ErrorCode::LengthMismatch, "diameter must be at least 1");
    require_char_not_two(field);
    for (const auto* s : {&theta, &theta_star})
        for (const auto& x : *s)
            if (x.field() != field) throw Error(ErrorCode::FieldMismatch, "entry " + x.to_string() + " not in " + field.spec());

    ValidationResult r;
    check_distinct(theta, "theta", r.violations);
    check_distinct(theta_star, "theta_star", r.violations);
    if (theta.size() - 1 >= 3 && !find_beta(theta, theta_star))
        r.violations.push_back({"recurrence", "no beta with s_{i-1} - beta s_i + s_{i+1} = 0 for both sequences"});
    check_antisymmetric(theta, "theta", r.violations);
    check_antisymmetric(theta_star, "theta_star", r.violations);
    if (r.violations.empty()) r.array = EigenvalueArray(field, theta, theta_star);
    return r;
}

EigenvalueArray make_array(const Field& field, const Vector& theta, const Vector& theta_star) {
    ValidationResult r = validate_array(field, theta, theta_star);
    if (!r.ok()) {
        std::string msg;
        for (const auto& v : r.violations) msg += (msg.empty() ? "" : "; ") + v.condition + ": " + v.detail;
        throw Error(ErrorCode::InvalidArray, msg);
    }
    return *r.array;
}

// ------------------------------------------------------------ beta

bool is_recurrent(const Vector& s, const FieldElement& beta) {
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
        if (!(s[i - 1] - beta * s[i] + s[i + 1]).is_zero()) return false;
    return true;
}

bool is_mutdist(const Vector& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j]) return false;
    return true;
}

std::optional<FieldElement> find_beta(const Vector& th, const Vector& ths) {
    if (th.size() < 4) return std::nullopt;
    std::optional<FieldElement> beta;
    if (!th[1].is_zero())
        beta = (th[0] + th[2]) / th[1];
    else if (!th[2].is_zero())
        beta = (th[1] + th[3]) / th[2];
    if (!beta || !is_recurrent(th, *beta) || !is_recurrent(ths, *beta)) return std::nullopt;
    return beta;
}

FundamentalParameter fundamental_parameter(const EigenvalueArray& arr) {
    if (arr.d() <= 2) return AnyBeta{};
    auto beta = find_beta(arr.theta(), arr.theta_star());
    if (!beta) throw Error(ErrorCode::NoBeta, "no beta satisfies both recurrences");
    return *beta;
}

FieldElement default_beta(const EigenvalueArray& arr) {
    FundamentalParameter fp = fundamental_parameter(arr);
    if (std::holds_alternative<AnyBeta>(fp)) return two(arr.field());
    return std::get<FieldElement>(fp);
}

// ------------------------------------------------------------ Askey-Wilson

FieldElement aw_expression(const Vector& s, const FieldElement& beta, std::size_t i) {
    return s[i - 1] * s[i - 1] - beta * s[i - 1] * s[i] + s[i] * s[i];
}

FieldElement aw_rho_closed_form(const Vector& s, const FieldElement& beta) {
    const std::size_t d = s.size() - 1;
    if (d % 2 == 0) {
        const FieldElement& t = s[d / 2 - 1];
        return t * t;
    }
    const FieldElement& t = s[(d - 1) / 2];
    return (beta + two(beta.field())) * t * t;
}

AskeyWilsonSeq aw_sequence(const EigenvalueArray& arr, const FieldElement& beta) {
    if (beta.field() != arr.field()) throw Error(ErrorCode::FieldMismatch, "beta not in the array's field");
    FundamentalParameter fp = fundamental_parameter(arr);
    if (auto* b = std::get_if<FieldElement>(&fp); b && *b != beta)
        throw Error(ErrorCode::BetaInvalid, beta.to_string() + " is not the fundamental parameter " + b->to_string());
    AskeyWilsonSeq seq{beta, aw_rho_closed_form(arr.theta(), beta), aw_rho_closed_form(arr.theta_star(), beta)};
    for (std::size_t i = 1; i <= arr.d(); ++i)
        if (aw_expression(arr.theta(), beta, i) != seq.rho || aw_expression(arr.theta_star(), beta, i) != seq.rho_star)
            throw Error(ErrorCode::BetaInvalid, "Askey-Wilson sequence check failed at i=" + std::to_string(i));
    return seq;
}

AskeyWilsonSeq aw_sequence_nonzero(const EigenvalueArray& arr) {
    AskeyWilsonSeq seq = aw_sequence(arr, default_beta(arr));
    if (seq.rho.is_zero() || seq.rho_star.is_zero())
        throw Error(ErrorCode::BetaInvalid, "rho vanishes for the chosen beta");
    return seq;
}

// ------------------------------------------------------------ recurrent sequences

RecurrentSeq recurrent_seq(const Vector& values, const FieldElement& beta) {
    if (values.size() < 2) throw Error(ErrorCode::LengthMismatch, "sequence needs d >= 1");
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        if (!(values[i - 1] - beta * values[i] + values[i + 1]).is_zero())
            throw Error(ErrorCode::NotRecurrent, "recurrence fails at i=" + std::to_string(i));
    RecurrentSeq r{beta, values};
    const std::size_t d = values.size() - 1;
    r.symmetric = r.antisymmetric = true;
    for (std::size_t i = 0; i <= d; ++i) {
        if (values[i] != values[d - i]) r.symmetric = false;
        if (!(values[i] + values[d - i]).is_zero()) r.antisymmetric = false;
    }
    r.mutdist = is_mutdist(values);
    return r;
}

std::pair<Vector, Vector> sym_asym_split(const Vector& values, const FieldElement& beta) {
    require_char_not_two(beta.field());
    recurrent_seq(values, beta);
    const std::size_t d = values.size() - 1;
    FieldElement half = two(beta.field()).inv();
    Vector sym, asym;
    for (std::size_t i = 0; i <= d; ++i) {
        sym.push_back(half * (values[i] + values[d - i]));
        asym.push_back(half * (values[i] - values[d - i]));
    }
    return {sym, asym};
}

Vector basis_sym(const FieldElement& beta, std::size_t d) {
    const Field& f = beta.field();
    require_char_not_two(f);
    Vector s;
    if (beta == two(f)) {
        s.assign(d + 1, f.one());
    } else if (beta == -two(f)) {
        for (std::size_t i = 0; i <= d; ++i) {
            FieldElement sign = i % 2 ? -f.one() : f.one();
            s.push_back(d % 2 == 0 ? sign : f.from_int(static_cast<long long>(d) - 2 * static_cast<long long>(i)) * sign);
        }
    } else if (d % 2 == 0) {
        s = propagate(beta, d, d / 2 - 1, beta, two(f));
    } else {
        s = propagate(beta, d, (d - 1) / 2, f.one(), f.one());
    }
    return s;
}

Vector basis_asym(const FieldElement& beta, std::size_t d) {
    const Field& f = beta.field();
    require_char_not_two(f);
    Vector s;
    if (beta == two(f)) {
        for (std::size_t i = 0; i <= d; ++i) s.push_back(f.from_int(static_cast<long long>(d) - 2 * static_cast<long long>(i)));
    } else if (beta == -two(f)) {
        for (std::size_t i = 0; i <= d; ++i) {
            FieldElement sign = i % 2 ? -f.one() : f.one();
            s.push_back(d % 2 == 1 ? sign : f.from_int(static_cast<long long>(d) - 2 * static_cast<long long>(i)) * sign);
        }
    } else if (d % 2 == 0) {
        s = propagate(beta, d, d / 2 - 1, f.one(), f.zero());
    } else {
        s = propagate(beta, d, (d - 1) / 2, f.one(), -f.one());
    }
    return s;
}

std::optional<FieldElement> q_from_beta(const FieldElement& beta) {
    const Field& f = beta.field();
    // q^2 = t with t^2 - beta t + 1 = 0
    auto disc = (beta * beta - f.from_int(4)).sqrt();
    if (!disc) return std::nullopt;
    FieldElement t = (beta + *disc) / two(f);
    if (t.is_zero()) return std::nullopt;
    auto r = t.sqrt();
    if (!r) return std::nullopt;
    std::vector<FieldElement> cands{*r, -*r, r->inv(), -r->inv()};
    return *std::min_element(cands.begin(), cands.end(), encoding_less);
}

// ------------------------------------------------------------ families

const char* family_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Krawtchouk: return "krawtchouk";
        case FamilyKind::BannaiIto: return "bannai-ito";
        case FamilyKind::QRacahEven: return "q-racah-even";
        case FamilyKind::QRacahOdd: return "q-racah-odd";
        case FamilyKind::SmallD1: return "small-d1";
        case FamilyKind::SmallD2: return "small-d2";
    }
    return "unknown";
}

FamilyKind parse_family(const std::string& name) {
    for (FamilyKind k : {FamilyKind::Krawtchouk, FamilyKind::BannaiIto, FamilyKind::QRacahEven, FamilyKind::QRacahOdd,
                         FamilyKind::SmallD1, FamilyKind::SmallD2})
        if (name == family_name(k)) return k;
    throw Error(ErrorCode::ParseError, "unknown family '" + name + "'");
}

namespace {

bool is_qracah(FamilyKind k) { return k == FamilyKind::QRacahEven || k == FamilyKind::QRacahOdd; }

bool q_equivalent(const FieldElement& a, const FieldElement& b) {
    return a == b || a == -b || a == b.inv() || a == -b.inv();
}

}  // namespace

bool tags_equivalent(const FamilyTag& x, const FamilyTag& y) {
    if (x.kind != y.kind || x.h != y.h || x.h_star != y.h_star) return false;
    if (x.q && y.q && !q_equivalent(*x.q, *y.q)) return false;
    if (x.beta && y.beta && *x.beta != *y.beta) return false;
    if (is_qracah(x.kind)) {
        Field f = x.h.field();
        return family_beta(x, f) == family_beta(y, f);
    }
    return true;
}

FieldElement family_beta(const FamilyTag& tag, const Field& f) {
    switch (tag.kind) {
        case FamilyKind::Krawtchouk: return two(f);
        case FamilyKind::BannaiIto: return -two(f);
        case FamilyKind::QRacahEven:
        case FamilyKind::QRacahOdd:
            if (tag.q) return tag.q->pow(2) + tag.q->pow(-2);
            if (tag.beta) return *tag.beta;
            throw Error(ErrorCode::InvalidArgument, "q-Racah tag needs q or beta");
        case FamilyKind::SmallD1:
        case FamilyKind::SmallD2: return two(f);
    }
    return two(f);
}

EigenvalueArray generate_family(const FamilyTag& tag, std::size_t d, const Field& f) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "diameter must be at least 1");
    if (!tag.h.is_set() || !tag.h_star.is_set() || tag.h.field() != f || tag.h_star.field() != f)
        throw Error(ErrorCode::FieldMismatch, "h and h* must lie in " + f.spec());
    if (tag.h.is_zero() || tag.h_star.is_zero()) throw Error(ErrorCode::InvalidArgument, "h and h* must be nonzero");
    if (f.characteristic() == 2) throw Error(ErrorCode::CharacteristicViolation, "characteristic 2 admits no arrays");
    const long long dd = static_cast<long long>(d);

    Vector basis;
    switch (tag.kind) {
        case FamilyKind::Krawtchouk:
            if (!char_exceeds(f, d)) throw Error(ErrorCode::CharacteristicViolation, "Krawtchouk needs char 0 or > d");
            for (long long i = 0; i <= dd; ++i) basis.push_back(f.from_int(dd - 2 * i));
            break;
        case FamilyKind::BannaiIto:
            if (d % 2 == 1) throw Error(ErrorCode::BannaiItoOddDiameter, "Bannai-Ito needs even d, got " + std::to_string(d));
            if (!char_exceeds(f, d)) throw Error(ErrorCode::CharacteristicViolation, "Bannai-Ito needs char 0 or > d");
            for (long long i = 0; i <= dd; ++i) basis.push_back(f.from_int((dd - 2 * i) * (i % 2 ? -1 : 1)));
            break;
        case FamilyKind::QRacahEven:
        case FamilyKind::QRacahOdd: {
            const bool even = tag.kind == FamilyKind::QRacahEven;
            if (even != (d % 2 == 0))
                throw Error(ErrorCode::InvalidArgument, std::string(family_name(tag.kind)) + " does not allow d=" + std::to_string(d));
            if (tag.q) {
                const FieldElement& q = *tag.q;
                if (q.field() != f) throw Error(ErrorCode::FieldMismatch, "q must lie in " + f.spec());
                if (q.is_zero()) throw Error(ErrorCode::QConditionViolation, "q must be nonzero");
                for (long long i = 1; i <= dd; ++i) {
                    FieldElement q2i = q.pow(2 * i);
                    if (q2i == f.one()) throw Error(ErrorCode::QConditionViolation, "q^" + std::to_string(2 * i) + " = 1");
                    if (i < dd && q2i == -f.one())
                        throw Error(ErrorCode::QConditionViolation, "q^" + std::to_string(2 * i) + " = -1");
                }
                if (tag.beta && *tag.beta != family_beta(FamilyTag{tag.kind, tag.h, tag.h_star, tag.q, std::nullopt}, f))
                    throw Error(ErrorCode::InvalidArgument, "beta does not equal q^2 + q^-2");
                FieldElement denom = even ? q.pow(2) - q.pow(-2) : q - q.inv();
                for (long long i = 0; i <= dd; ++i) basis.push_back((q.pow(dd - 2 * i) - q.pow(2 * i - dd)) / denom);
            } else {
                FieldElement beta = family_beta(tag, f);
                if (beta.field() != f) throw Error(ErrorCode::FieldMismatch, "beta must lie in " + f.spec());
                if (beta == two(f) || beta == -two(f))
                    throw Error(ErrorCode::QConditionViolation, "q-Racah needs beta != +-2");
                basis = basis_asym(beta, d);
                if (!is_mutdist(basis)) throw Error(ErrorCode::QConditionViolation, "basis sequence is not mutually distinct");
            }
            break;
        }
        case FamilyKind::SmallD1:
            if (d != 1) throw Error(ErrorCode::InvalidArgument, "small-d1 needs d=1");
            basis = {f.one(), -f.one()};
            break;
        case FamilyKind::SmallD2:
            if (d != 2) throw Error(ErrorCode::InvalidArgument, "small-d2 needs d=2");
            basis = {f.one(), f.zero(), -f.one()};
            break;
    }
    Vector th, ths;
    for (const auto& s : basis) {
        th.push_back(tag.h * s);
        ths.push_back(tag.h_star * s);
    }
    return make_array(f, th, ths);
}

FamilyTag classify(const EigenvalueArray& arr) {
    const Field& f = arr.field();
    const std::size_t d = arr.d();
    FamilyTag tag;
    if (d <= 2) {
        tag.kind = d == 1 ? FamilyKind::SmallD1 : FamilyKind::SmallD2;
        tag.h = arr.theta()[0];
        tag.h_star = arr.theta_star()[0];
        return tag;
    }
    FieldElement beta = std::get<FieldElement>(fundamental_parameter(arr));
    if (beta == two(f)) {
        tag.kind = FamilyKind::Krawtchouk;
    } else if (beta == -two(f)) {
        if (d % 2 == 1) throw Error(ErrorCode::Unclassifiable, "beta = -2 with odd d");
        tag.kind = FamilyKind::BannaiIto;
    } else {
        tag.kind = d % 2 == 0 ? FamilyKind::QRacahEven : FamilyKind::QRacahOdd;
        tag.beta = beta;
        tag.q = q_from_beta(beta);
    }
    Vector sigma = basis_asym(beta, d);
    if (sigma[0].is_zero()) throw Error(ErrorCode::Unclassifiable, "basis sequence starts with zero");
    tag.h = arr.theta()[0] / sigma[0];
    tag.h_star = arr.theta_star()[0] / sigma[0];
    for (std::size_t i = 0; i <= d; ++i)
        if (arr.theta()[i] != tag.h * sigma[i] || arr.theta_star()[i] != tag.h_star * sigma[i])
            throw Error(ErrorCode::Unclassifiable, "array is not proportional to the basis at i=" + std::to_string(i));
    return tag;
}

// ------------------------------------------------------------ relatives

Relatives relatives(const EigenvalueArray& arr) {
    Vector th = arr.theta(), ths = arr.theta_star();
    Vector th_rev(th.rbegin(), th.rend()), ths_rev(ths.rbegin(), ths.rend());
    const Field& f = arr.field();
    return Relatives{make_array(f, ths, th), make_array(f, th, ths_rev), make_array(f, th_rev, ths)};
}

bool is_self_dual(const EigenvalueArray& arr) { return arr.theta() == arr.theta_star(); }

FieldElement self_dual_scaling(const EigenvalueArray& arr) { return arr.theta_star()[0] / arr.theta()[0]; }

EigenvalueArray scaled_self_dual(const EigenvalueArray& arr) {
    FieldElement zeta = self_dual_scaling(arr);
    Vector th;
    for (const auto& t : arr.theta()) th.push_back(zeta * t);
    return make_array(arr.field(), th, arr.theta_star());
}

}  // namespace tbtd
