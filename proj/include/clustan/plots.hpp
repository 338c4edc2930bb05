#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clustan/matrix.hpp"
#include "clustan/projection.hpp"
#include "clustan/validation.hpp"

namespace clustan {

/// Fill colour for a cluster id (cycles through a fixed palette).
std::string_view cluster_color(int cluster) noexcept;

/// Cluster scatter on the PCA plane: one `point` circle per row, one `center`
/// marker per row of `centers` (already projected, n x 2).
std::string emit_scatter_svg(const Projection2D& proj, std::span<const int> labels,
                             const std::optional<Matrix>& centers = std::nullopt,
                             std::string_view title = "Cluster plot");

/// Silhouette bars, one per point, grouped by cluster and sorted descending,
/// with a dashed line at the overall mean.
std::string emit_silhouette_svg(const SilhouetteReport& report, std::string_view title = "Silhouette plot");

/// Average silhouette and WSS against k, best k highlighted.
std::string emit_sweep_svg(const KSweepResult& sweep);

std::string scatter_csv(const Projection2D& proj, std::span<const int> labels, std::span<const std::string> row_ids);
std::string silhouette_csv(const SilhouetteReport& report, std::span<const std::string> row_ids);
std::string sweep_csv(const KSweepResult& sweep);

}  // namespace clustan
