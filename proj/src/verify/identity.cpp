#include <cmath>
#include <cstring>
#include <string>

#include "lambertheta/verify.hpp"

namespace lambertheta {

namespace {

bool same_double(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return std::memcmp(&a, &b, sizeof a) == 0;
}

bool same_scalar(Scalar a, Scalar b) { return same_double(a.real(), b.real()) && same_double(a.imag(), b.imag()); }

bool same_result(const std::optional<EvalResult>& a, const std::optional<EvalResult>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return same_scalar(a->value, b->value) && a->terms_used == b->terms_used &&
           same_double(a->tail_estimate, b->tail_estimate) && a->converged == b->converged;
}

bool skippable(ErrorKind k) {
    return k == ErrorKind::PoleProximity || k == ErrorKind::DomainViolation || k == ErrorKind::OutsideRadius ||
           k == ErrorKind::ZeroLambdaPower;
}

enum class SideOutcome { Value, Skip, Fail };

/// Runs one side, mapping evaluator errors onto report state.
template <typename Fn>
SideOutcome run_side(Fn&& fn, std::optional<EvalResult>& slot, std::string& reason, const char* side) {
    try {
        slot = fn();
        return SideOutcome::Value;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::MaxTermsExceeded) {
            slot = e.partial();
            return SideOutcome::Value;
        }
        reason = e.what();
        if (skippable(e.kind())) return SideOutcome::Skip;
        reason = std::string(side) + ": " + reason;
        return SideOutcome::Fail;
    }
}

IdentityReport check_impl(const SeriesParams& params, const SequenceSpec& spec, const ClosedForm& form,
                          const SequenceSpec* spec_b, const ClosedForm* form_b, const std::string& spec_label,
                          const std::string& form_label, const CheckOptions& opts) {
    if (!is_registered_pair(spec, form) || (spec_b && form_b && !is_registered_pair(*spec_b, *form_b))) {
        throw Error(ErrorKind::UnpairedSpecForm, "coefficient sequence does not match the generating function");
    }

    IdentityReport r;
    r.family = to_string(family_of(params));
    r.spec = spec_label;
    r.form = form_label;
    r.tol = opts.tol;
    r.verdict = Verdict::Skipped;

    try {
        r.params = named_params(params);
        const auto violations = validate_domain(params, radii_of(form, form_b), opts.eval);
        for (const auto& v : violations) {
            if (opts.mode == DomainMode::Strict || !v.relaxable) {
                r.reason = v.what;
                return r;
            }
        }
        if (!violations.empty()) {
            r.flags.emplace_back(kOutsideHypotheses);
            for (const auto& v : violations) r.flags.push_back(v.what);
        }
    } catch (const Error& e) {
        r.reason = e.what();
        return r;
    }

    const auto lhs = run_side([&] { return eval_lhs(params, spec, spec_b, opts.eval); }, r.lhs, r.reason, "lhs");
    if (lhs == SideOutcome::Skip) return r;
    if (lhs == SideOutcome::Fail) {
        r.verdict = Verdict::Fail;
        return r;
    }
    const auto rhs = run_side([&] { return eval_rhs(params, form, form_b, opts.eval); }, r.rhs, r.reason, "rhs");
    if (rhs == SideOutcome::Skip) return r;
    if (rhs == SideOutcome::Fail) {
        r.verdict = Verdict::Fail;
        return r;
    }

    r.abs_gap = std::abs(r.lhs->value - r.rhs->value);
    r.rel_gap = r.abs_gap / std::max(1.0, std::abs(r.lhs->value));
    if (!r.lhs->converged) {
        r.verdict = Verdict::Fail;
        r.reason = "lhs not converged";
    } else if (!r.rhs->converged) {
        r.verdict = Verdict::Fail;
        r.reason = "rhs not converged";
    } else if (!(r.rel_gap <= opts.tol)) {
        r.verdict = Verdict::Fail;
        r.reason = "rel_gap above tolerance";
    } else {
        r.verdict = Verdict::Pass;
        r.reason.clear();
    }
    return r;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Skipped: return "SKIPPED";
    }
    return "?";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
    for (auto v : {Verdict::Pass, Verdict::Fail, Verdict::Skipped}) {
        if (text == to_string(v)) return v;
    }
    return std::nullopt;
}

bool operator==(const IdentityReport& a, const IdentityReport& b) {
    if (a.params.size() != b.params.size()) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i) {
        if (a.params[i].first != b.params[i].first || !same_scalar(a.params[i].second, b.params[i].second)) {
            return false;
        }
    }
    return a.family == b.family && a.spec == b.spec && a.form == b.form && same_result(a.lhs, b.lhs) &&
           same_result(a.rhs, b.rhs) && same_double(a.abs_gap, b.abs_gap) && same_double(a.rel_gap, b.rel_gap) &&
           same_double(a.tol, b.tol) && a.verdict == b.verdict && a.reason == b.reason && a.flags == b.flags;
}

IdentityReport check_identity(const SeriesParams& params, const SequenceSpec& spec, const ClosedForm& form,
                              const CheckOptions& opts) {
    return check_impl(params, spec, form, nullptr, nullptr, spec.label(), form.label(), opts);
}

IdentityReport check_identity(const SeriesParams& params, const SequenceSpec& spec, const ClosedForm& form,
                              const SequenceSpec& spec_b, const ClosedForm& form_b, const CheckOptions& opts) {
    if (family_of(params) != Family::Rogers) return check_identity(params, spec, form, opts);
    return check_impl(params, spec, form, &spec_b, &form_b, spec.label() + ";" + spec_b.label(),
                      form.label() + ";" + form_b.label(), opts);
}

IdentityReport check_identity(const SeriesParams& params, const SeriesPair& a, const SeriesPair* b,
                              const CheckOptions& opts) {
    if (family_of(params) == Family::Rogers) {
        const SeriesPair& second = b ? *b : a;
        return check_impl(params, a.spec, a.form, &second.spec, &second.form, a.name + ";" + second.name,
                          a.form.label() + ";" + second.form.label(), opts);
    }
    return check_impl(params, a.spec, a.form, nullptr, nullptr, a.name, a.form.label(), opts);
}

}  // namespace lambertheta
