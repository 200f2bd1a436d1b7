#include "lambertheta/verify.hpp"

namespace lambertheta {

namespace {

IdentityReport check_point(const SweepPlan& plan, const SweepPoint& pt, const CheckOptions& opts) {
    const SeriesPair& a = plan.pairs[pt.pair_a];
    const SeriesPair& b = plan.pairs[pt.pair_b];
    try {
        return check_identity(pt.params, a, &b, opts);
    } catch (const std::exception& e) {
        // check_identity only throws for unregistered pairs; keep the sweep going.
        IdentityReport r;
        r.family = to_string(family_of(pt.params));
        r.params = named_params(pt.params);
        r.spec = a.name;
        r.form = a.form.label();
        r.tol = opts.tol;
        r.verdict = Verdict::Fail;
        r.reason = e.what();
        return r;
    }
}

std::uint64_t stream_seed(std::uint64_t seed, Family family, std::size_t pair) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(family), static_cast<std::uint32_t>(pair)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

std::vector<SeriesParams> expand_grid(const ParameterGrid& grid) {
    std::vector<SeriesParams> points{grid.base};
    for (const auto& [name, values] : grid.axes) {
        if (values.empty()) throw Error(ErrorKind::EmptyGrid, "grid axis '" + name + "' has no values");
        std::vector<SeriesParams> next;
        next.reserve(points.size() * values.size());
        for (const auto& p : points) {
            for (auto v : values) {
                SeriesParams q = p;
                set_param(q, name, v);
                next.push_back(std::move(q));
            }
        }
        points = std::move(next);
    }
    return points;
}

SweepPlan plan_sweep(Family family, const std::vector<SeriesPair>& pairs, const PointSource& source,
                     const EvalConfig& cfg) {
    if (pairs.empty()) throw Error(ErrorKind::EmptyGrid, "empty spec/form set");
    SweepPlan plan{pairs, {}};
    const std::size_t n = pairs.size();

    if (const auto* grid = std::get_if<ParameterGrid>(&source)) {
        if (family_of(grid->base) != family) {
            throw Error(ErrorKind::InvalidArgument, "grid base parameters belong to another family");
        }
        const auto points = expand_grid(*grid);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& p : points) plan.points.push_back({p, i, (i + 1) % n});
        }
        return plan;
    }

    const auto& cloud = std::get<RandomCloud>(source);
    if (cloud.count == 0) throw Error(ErrorKind::EmptyGrid, "random cloud with zero points");
    for (std::size_t i = 0; i < n; ++i) {
        std::mt19937_64 rng(stream_seed(cloud.seed, family, i));
        const SeriesPair* b = &pairs[(i + 1) % n];
        for (std::size_t k = 0; k < cloud.count; ++k) {
            plan.points.push_back({draw_params(family, pairs[i], b, rng, cfg), i, (i + 1) % n});
        }
    }
    return plan;
}

std::vector<IdentityReport> run_sweep_serial(const SweepPlan& plan, const CheckOptions& opts) {
    std::vector<IdentityReport> out;
    out.reserve(plan.points.size());
    for (const auto& pt : plan.points) out.push_back(check_point(plan, pt, opts));
    return out;
}

std::vector<IdentityReport> run_sweep_parallel(const SweepPlan& plan, const CheckOptions& opts) {
    const auto n = static_cast<std::int64_t>(plan.points.size());
    std::vector<IdentityReport> out(plan.points.size());
    // Points are independent and of very uneven cost (shell sums vs. single
    // sums), hence dynamic scheduling.
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = check_point(plan, plan.points[static_cast<std::size_t>(i)], opts);
    }
    return out;
}

std::vector<IdentityReport> sweep(Family family, const std::vector<SeriesPair>& pairs, const PointSource& source,
                                  const CheckOptions& opts, bool parallel) {
    const auto plan = plan_sweep(family, pairs, source, opts.eval);
    return parallel ? run_sweep_parallel(plan, opts) : run_sweep_serial(plan, opts);
}

SweepSummary summarize(const std::vector<IdentityReport>& reports) {
    SweepSummary s;
    for (const auto& r : reports) {
        switch (r.verdict) {
            case Verdict::Pass: ++s.pass; break;
            case Verdict::Fail: ++s.fail; break;
            case Verdict::Skipped: ++s.skipped; break;
        }
    }
    return s;
}

}  // namespace lambertheta
