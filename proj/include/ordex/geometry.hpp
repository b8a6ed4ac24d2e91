#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "ordex/ordering.hpp"

namespace ordex {

// 2-D PCA summary of one contribution cloud. When the cloud carries no
// usable orientation (total variance < 1e-12, or lambda1 ~ lambda2 so the
// principal axis is ill-defined), `degenerate` is set and the derived
// quantities take their neutral values: theta = 0, skinny = 0.5, horiz = 0.
struct CloudGeometry {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double theta = 0.0;  // principal-axis angle in [0, pi)
    double skinny = 0.5;
    double horiz = 0.0;
    std::size_t n_points = 0;
    bool degenerate = false;
};

struct PairScore {
    int a = 0;
    int b = 0;
    double l_score = 0.0;
    double dominance = 0.0;
    double mean_delta_a = 0.0;
    double mean_delta_b = 0.0;
    CloudGeometry red;
    CloudGeometry blue;
};

// Mean-centered 2x2 covariance eigenstructure in closed form:
//   lambda = ((cxx+cyy) +- sqrt((cxx-cyy)^2 + 4 cxy^2)) / 2
//   theta  = atan2(2 cxy, cxx-cyy) / 2, folded into [0, pi)
// Throws InsufficientData for fewer than 3 points.
CloudGeometry cloud_pca(std::span<const Point2> points);

// lambda1 / (lambda1 + lambda2); equals the ratio form (l1/l2)/(1 + l1/l2)
// wherever the latter is defined, and extends it to lambda2 = 0.
double skinniness(double lambda1, double lambda2);

// cos(2 theta): +1 horizontal, -1 vertical, 0 diagonal.
double horizontalness(double theta);

// skinny_red * skinny_blue * (horiz_red - horiz_blue) / 2.
// +1 perfect redundancy, -1 perfect synergy, ~0 independence.
double l_score(const CloudGeometry& red, const CloudGeometry& blue);

// (mean_a - mean_b) / max(|mean_a| + |mean_b|, 1e-12) over all points of
// both arms; positive means feature a contributes more on average.
double dominance(const PairCloud& cloud);

// Full scoring of one pair; throws InsufficientData naming the arm when
// either arm has fewer than 3 points.
PairScore pair_score(const PairCloud& cloud);

// Scores for all unordered feature pairs. Pairs whose arms are too small
// are recorded as nullopt rather than aborting the whole matrix.
class PairScoreTable {
public:
    PairScoreTable() = default;
    explicit PairScoreTable(std::size_t n_features);

    std::size_t n_features() const { return n_; }
    const std::optional<PairScore>& at(int a, int b) const;
    std::optional<PairScore>& at(int a, int b);
    // l_score of (a, b), if present
    std::optional<double> score(int a, int b) const;

private:
    std::size_t n_ = 0;
    std::vector<std::optional<PairScore>> cells_;
};

PairScoreTable score_matrix(const TrialSet& trials);

struct TriadFlag {
    enum class Type { synergy, redundancy };
    int a = 0;
    int b = 0;
    int c = 0;
    Type type = Type::synergy;
    std::array<double, 3> scores{};  // l(a,b), l(a,c), l(b,c)
};

// Triples whose three pairwise l_scores all sit at or beyond +-tau.
std::vector<TriadFlag> detect_higher_order(const PairScoreTable& table, double tau);

}  // namespace ordex
