#include "ordex/geometry.hpp"

#include <cmath>
#include <string>

#include "ordex/errors.hpp"

namespace ordex {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kDegenerateEps = 1e-12;
constexpr double kDominanceFloor = 1e-12;

struct Moments {
    double mean_x, mean_y;
    double cxx, cyy, cxy;  // covariance normalized by n
};

Moments cloud_moments(std::span<const Point2> points) {
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& p : points) {
        sx += p.x;
        sy += p.y;
    }
    Moments m{sx / n, sy / n, 0.0, 0.0, 0.0};
    for (const auto& p : points) {
        const double dx = p.x - m.mean_x;
        const double dy = p.y - m.mean_y;
        m.cxx += dx * dx;
        m.cyy += dy * dy;
        m.cxy += dx * dy;
    }
    m.cxx /= n;
    m.cyy /= n;
    m.cxy /= n;
    return m;
}

}  // namespace

CloudGeometry cloud_pca(std::span<const Point2> points) {
    if (points.size() < 3)
        throw InsufficientData("cloud_pca: need at least 3 points, got " +
                               std::to_string(points.size()));
    const Moments m = cloud_moments(points);

    const double trace = m.cxx + m.cyy;
    const double diff = m.cxx - m.cyy;
    const double disc = std::sqrt(diff * diff + 4.0 * m.cxy * m.cxy);

    CloudGeometry g;
    g.n_points = points.size();
    g.lambda1 = 0.5 * (trace + disc);
    g.lambda2 = 0.5 * (trace - disc);
    if (g.lambda2 < 0.0) g.lambda2 = 0.0;  // guard fp cancellation

    if (trace < kDegenerateEps || g.lambda1 - g.lambda2 < kDegenerateEps) {
        g.degenerate = true;
        g.theta = 0.0;
        g.skinny = 0.5;
        g.horiz = 0.0;
        return g;
    }

    double theta = 0.5 * std::atan2(2.0 * m.cxy, diff);
    if (theta < 0.0) theta += kPi;
    if (theta >= kPi) theta -= kPi;
    g.theta = theta == 0.0 ? 0.0 : theta;  // normalize -0.0
    g.skinny = skinniness(g.lambda1, g.lambda2);
    g.horiz = horizontalness(g.theta);
    return g;
}

double skinniness(double lambda1, double lambda2) {
    const double total = lambda1 + lambda2;
    if (!(total > 0.0)) return 0.5;
    return lambda1 / total;
}

double horizontalness(double theta) { return std::cos(2.0 * theta); }

double l_score(const CloudGeometry& red, const CloudGeometry& blue) {
    return red.skinny * blue.skinny * (red.horiz - blue.horiz) / 2.0;
}

double dominance(const PairCloud& cloud) {
    const std::size_t n = cloud.red.size() + cloud.blue.size();
    if (n == 0) throw InsufficientData("dominance: empty pair cloud");
    double sa = 0.0, sb = 0.0;
    for (const auto& p : cloud.red) {
        sa += p.x;
        sb += p.y;
    }
    for (const auto& p : cloud.blue) {
        sa += p.x;
        sb += p.y;
    }
    const double mean_a = sa / static_cast<double>(n);
    const double mean_b = sb / static_cast<double>(n);
    return (mean_a - mean_b) / std::max(std::fabs(mean_a) + std::fabs(mean_b), kDominanceFloor);
}

PairScore pair_score(const PairCloud& cloud) {
    if (cloud.red.size() < 3)
        throw InsufficientData("pair_score: red arm of (" + std::to_string(cloud.a) + "," +
                               std::to_string(cloud.b) + ") has " +
                               std::to_string(cloud.red.size()) + " points, need 3");
    if (cloud.blue.size() < 3)
        throw InsufficientData("pair_score: blue arm of (" + std::to_string(cloud.a) + "," +
                               std::to_string(cloud.b) + ") has " +
                               std::to_string(cloud.blue.size()) + " points, need 3");

    PairScore s;
    s.a = cloud.a;
    s.b = cloud.b;
    s.red = cloud_pca(cloud.red);
    s.blue = cloud_pca(cloud.blue);
    s.l_score = l_score(s.red, s.blue);
    s.dominance = dominance(cloud);

    const std::size_t n = cloud.red.size() + cloud.blue.size();
    double sa = 0.0, sb = 0.0;
    for (const auto& p : cloud.red) {
        sa += p.x;
        sb += p.y;
    }
    for (const auto& p : cloud.blue) {
        sa += p.x;
        sb += p.y;
    }
    s.mean_delta_a = sa / static_cast<double>(n);
    s.mean_delta_b = sb / static_cast<double>(n);
    return s;
}

PairScoreTable::PairScoreTable(std::size_t n_features)
    : n_(n_features), cells_(n_features * n_features) {}

const std::optional<PairScore>& PairScoreTable::at(int a, int b) const {
    if (a > b) std::swap(a, b);  // canonical storage is a < b
    return cells_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
}

std::optional<PairScore>& PairScoreTable::at(int a, int b) {
    if (a > b) std::swap(a, b);
    return cells_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
}

std::optional<double> PairScoreTable::score(int a, int b) const {
    const auto& cell = at(a, b);
    if (!cell) return std::nullopt;
    return cell->l_score;
}

PairScoreTable score_matrix(const TrialSet& trials) {
    const int n = static_cast<int>(trials.n_features);
    PairScoreTable table(trials.n_features);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const PairCloud cloud = build_pair_clouds(trials, a, b);
            try {
                table.at(a, b) = pair_score(cloud);
            } catch (const InsufficientData&) {
                table.at(a, b) = std::nullopt;
            }
        }
    }
    return table;
}

std::vector<TriadFlag> detect_higher_order(const PairScoreTable& table, double tau) {
    if (!(tau > 0.0) || tau > 1.0)
        throw ArgumentError("detect_higher_order: tau must be in (0, 1]");
    std::vector<TriadFlag> flags;
    const int n = static_cast<int>(table.n_features());
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                const auto ab = table.score(a, b);
                const auto ac = table.score(a, c);
                const auto bc = table.score(b, c);
                if (!ab || !ac || !bc) continue;
                TriadFlag flag;
                flag.a = a;
                flag.b = b;
                flag.c = c;
                flag.scores = {*ab, *ac, *bc};
                if (*ab <= -tau && *ac <= -tau && *bc <= -tau) {
                    flag.type = TriadFlag::Type::synergy;
                    flags.push_back(flag);
                } else if (*ab >= tau && *ac >= tau && *bc >= tau) {
                    flag.type = TriadFlag::Type::redundancy;
                    flags.push_back(flag);
                }
            }
        }
    }
    return flags;
}

}  // namespace ordex
