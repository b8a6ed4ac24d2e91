#pragma once

#include <optional>
#include <string>

#include "ordex/baselines.hpp"
#include "ordex/geometry.hpp"

namespace ordex {

// Deterministic, self-contained SVG text. Coordinates are written with 6
// significant digits so identical inputs yield identical bytes.

// Red/blue contribution scatter for one pair. Red marks trials where the
// first-listed feature was added first. The L-score is annotated as e.g.
// "L = +0.87"; a missing score renders an "insufficient data" label.
std::string render_pair_scatter(const PairCloud& cloud, const std::optional<PairScore>& score,
                                const std::string& name_a, const std::string& name_b);

// Lower-triangle heatmap of a symmetric pair metric: diverging scale with
// -1 blue, 0 white, +1 red (unbounded metrics are scaled by their largest
// off-diagonal magnitude), diagonal blank, cell values printed to 2
// decimals. Cells carry id="cell_<i>_<j>".
std::string render_heatmap(const MetricMatrix& metric);

}  // namespace ordex
