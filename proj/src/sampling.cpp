#include "stefan/sampling.hpp"

#include "stefan/error.hpp"
#include "stefan/rng.hpp"

#include <cmath>

namespace stefan {

namespace {

enum Stream : std::uint64_t { Interior = 1, Initial = 2, Boundary = 3, Interface = 4 };

Rng stream_for(std::uint64_t seed, int k, SeedPolicy policy, Stream s) {
    const std::uint64_t it = policy == SeedPolicy::PerIteration ? static_cast<std::uint64_t>(k) : 0;
    return Rng::stream(seed, it * 16 + s);
}

Eigen::VectorXd random_in_box(Rng& rng, const std::vector<Interval>& box) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(box.size()));
    for (size_t i = 0; i < box.size(); ++i)
        x(static_cast<Eigen::Index>(i)) = rng.uniform(box[i].first, box[i].second);
    return x;
}

bool inside(const ProblemSpec& p, const Eigen::VectorXd& x) {
    return !p.in_domain || p.in_domain(x);
}

int phase_at(const InterfaceModel& model, const Eigen::VectorXd& x, double t) {
    return signed_offset(model, x, t) < 0 ? 0 : 1;
}

/// Collects rows per phase until every active phase holds `want` rows.
class Collector {
public:
    Collector(const ProblemSpec& p, int want) : p_(p), want_(want) {
        for (auto& r : rows_) r.reserve(static_cast<size_t>(want));
    }
    bool full() const {
        for (int i = 0; i < 2; ++i)
            if (p_.phases[i].active && static_cast<int>(rows_[i].size()) < want_) return false;
        return true;
    }
    bool add(int phase, Eigen::VectorXd row, int tag = -1) {
        if (!p_.phases[phase].active || static_cast<int>(rows_[phase].size()) >= want_) return false;
        rows_[phase].push_back(std::move(row));
        tags_[phase].push_back(tag);
        return true;
    }
    void finish(const char* what, long proposals, std::array<Eigen::MatrixXd, 2>& out,
                std::array<std::vector<int>, 2>* tags = nullptr) {
        for (int i = 0; i < 2; ++i) {
            if (p_.phases[i].active && static_cast<int>(rows_[i].size()) < want_) {
                const double rate = static_cast<double>(rows_[i].size()) / static_cast<double>(proposals);
                throw Error(ErrorKind::RejectionFailure,
                            std::string(what) + " sampling for phase " + std::to_string(i + 1) +
                                " accepted " + std::to_string(rows_[i].size()) + " of " +
                                std::to_string(want_) + " points (rate " + std::to_string(rate) + ")");
            }
            const int n = static_cast<int>(rows_[i].size());
            const int w = n > 0 ? static_cast<int>(rows_[i][0].size()) : 0;
            out[i].resize(n, w);
            for (int r = 0; r < n; ++r) out[i].row(r) = rows_[i][static_cast<size_t>(r)].transpose();
            if (tags) (*tags)[i] = tags_[i];
        }
    }

private:
    const ProblemSpec& p_;
    int want_;
    std::array<std::vector<Eigen::VectorXd>, 2> rows_;
    std::array<std::vector<int>, 2> tags_;
};

// Proposal budget: a phase accepting fewer than 1% of proposals cannot fill
// its quota within this many draws.
long proposal_budget(int want, int phases) { return 100L * want * phases + 1000L; }

int active_phases(const ProblemSpec& p) {
    return (p.phases[0].active ? 1 : 0) + (p.phases[1].active ? 1 : 0);
}

} // namespace

InterfaceSamples interface_samples(const ProblemSpec& problem, const InterfaceModel& model,
                                   const Eigen::MatrixXd& param, const Eigen::VectorXd& time) {
    const int n = static_cast<int>(time.size());
    const int d = problem.dim;
    InterfaceSamples s;
    s.param = param;
    s.time = time;
    s.points.resize(n, problem.space_time_dim());
    s.normal.resize(n, d);
    s.normal_velocity.resize(n);
    s.curvature.resize(n);
    s.metric.resize(n);
    ShapeRows rows = shape_rows(model.basis, model.mode, model.transient, param, time);
    const Eigen::VectorXd g = rows.value * model.coeffs, gp = rows.dp * model.coeffs,
                          gpp = rows.dpp * model.coeffs, gt = rows.dt * model.coeffs;
    for (int i = 0; i < n; ++i) {
        ShapeJet jet{clamp_shape(model, g(i)), gp(i), gpp(i), gt(i)};
        Eigen::VectorXd pr = param.row(i).transpose();
        InterfacePoint ip = interface_from_jet(model.mode, pr, time(i), jet);
        s.points.row(i).head(d) = ip.position.transpose();
        if (problem.transient) s.points(i, d) = time(i);
        s.normal.row(i) = ip.normal.transpose();
        s.normal_velocity(i) = ip.normal_velocity;
        s.curvature(i) = ip.curvature;
        s.metric(i) = ip.metric;
    }
    return s;
}

CollocationSet sample_collocation(const ProblemSpec& p, const InterfaceModel& model,
                                  const SampleCounts& counts, int k, std::uint64_t seed,
                                  SeedPolicy policy) {
    if (counts.interior < 1 || counts.boundary < 0 || counts.initial < 0 || counts.interface < 1)
        throw Error(ErrorKind::InvalidArgument, "collocation counts must be positive");
    CollocationSet out;
    out.iteration = k;
    out.policy = policy;
    const int d = p.dim;
    const int width = p.space_time_dim();
    const int nph = active_phases(p);

    {
        Rng rng = stream_for(seed, k, policy, Interior);
        Collector col(p, counts.interior);
        const long budget = proposal_budget(counts.interior, nph);
        long n = 0;
        for (; n < budget && !col.full(); ++n) {
            Eigen::VectorXd x = random_in_box(rng, p.box);
            const double t = p.transient ? rng.uniform(p.t_start, p.t_end) : 0.0;
            if (!inside(p, x)) continue;
            Eigen::VectorXd row(width);
            row.head(d) = x;
            if (p.transient) row(d) = t;
            col.add(phase_at(model, x, t), std::move(row));
        }
        std::array<Eigen::MatrixXd, 2> m;
        col.finish("interior", n, m);
        for (int i = 0; i < 2; ++i) out.phase[i].interior = std::move(m[i]);
    }

    if (p.transient && counts.initial > 0) {
        Rng rng = stream_for(seed, k, policy, Initial);
        Collector col(p, counts.initial);
        const long budget = proposal_budget(counts.initial, nph);
        long n = 0;
        for (; n < budget && !col.full(); ++n) {
            Eigen::VectorXd x = random_in_box(rng, p.box);
            if (!inside(p, x)) continue;
            Eigen::VectorXd row(width);
            row.head(d) = x;
            row(d) = p.t_start;
            col.add(phase_at(model, x, p.t_start), std::move(row));
        }
        std::array<Eigen::MatrixXd, 2> m;
        col.finish("initial", n, m);
        for (int i = 0; i < 2; ++i) out.phase[i].initial = std::move(m[i]);
    }

    if (!p.faces.empty() && counts.boundary > 0) {
        Rng rng = stream_for(seed, k, policy, Boundary);
        double total = 0.0;
        for (const auto& f : p.faces) total += f.measure;
        Collector col(p, counts.boundary);
        const long budget = proposal_budget(counts.boundary, nph);
        long n = 0;
        for (; n < budget && !col.full(); ++n) {
            // face chosen proportionally to its measure
            double pick = rng.uniform01() * total;
            int fi = 0;
            while (fi + 1 < static_cast<int>(p.faces.size()) && pick >= p.faces[fi].measure) {
                pick -= p.faces[fi].measure;
                ++fi;
            }
            Eigen::VectorXd u(std::max(d - 1, 0));
            for (int j = 0; j < u.size(); ++j) u(j) = rng.uniform01();
            const double t = p.transient ? rng.uniform(p.t_start, p.t_end) : 0.0;
            Eigen::VectorXd x = p.faces[fi].map(u);
            Eigen::VectorXd row(width);
            row.head(d) = x;
            if (p.transient) row(d) = t;
            col.add(phase_at(model, x, t), std::move(row), fi);
        }
        std::array<Eigen::MatrixXd, 2> m;
        std::array<std::vector<int>, 2> tags;
        col.finish("boundary", n, m, &tags);
        for (int i = 0; i < 2; ++i) {
            out.phase[i].boundary = std::move(m[i]);
            out.phase[i].boundary_face = std::move(tags[i]);
        }
    }

    {
        Rng rng = stream_for(seed, k, policy, Interface);
        const int n = counts.interface;
        const int pd = param_dim(p.mode);
        Eigen::MatrixXd param(n, pd);
        Eigen::VectorXd time(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < pd; ++j) param(i, j) = rng.uniform(p.param_range.first, p.param_range.second);
            time(i) = p.transient ? rng.uniform(p.t_start, p.t_end) : 0.0;
        }
        out.interface = interface_samples(p, model, param, time);
    }
    return out;
}

} // namespace stefan
