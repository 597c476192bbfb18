#include "compplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "compplan/error.hpp"

namespace compplan {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

void require_positive_spacing(double d) {
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw DomainError("BS spacing must be a finite positive length, got " + std::to_string(d));
    }
}

double cross(Point2D o, Point2D a, Point2D b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

HexSpacing::HexSpacing(double meters) : meters_(meters) { require_positive_spacing(meters); }

bool CoopRegion::contains(Point2D p, double tol) const {
    const std::size_t n = polygon.size();
    const double scale = tol * spacing;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2D a = polygon[i];
        const Point2D b = polygon[(i + 1) % n];
        const double edge = distance(a, b);
        if (cross(a, b, p) < -scale * edge) return false;
    }
    return true;
}

double density_from_spacing(double spacing_m) {
    require_positive_spacing(spacing_m);
    return 2.0 / (kSqrt3 * spacing_m * spacing_m);
}

double spacing_from_density(double density_per_m2) {
    if (!(density_per_m2 > 0.0) || !std::isfinite(density_per_m2)) {
        throw DomainError("BS density must be a finite positive value, got " +
                          std::to_string(density_per_m2));
    }
    return std::sqrt(2.0 / (kSqrt3 * density_per_m2));
}

CoopRegion build_coop_region(int order, double spacing_m) {
    if (order < 1 || order > 3) throw UnsupportedOrder(order);
    require_positive_spacing(spacing_m);

    const double d = spacing_m;
    // Hexagon corner shared by the cells of (0,0), (D,0) and (D/2, sqrt(3)D/2).
    const Point2D upper_corner{d / 2.0, d / (2.0 * kSqrt3)};
    const Point2D lower_corner{d / 2.0, -d / (2.0 * kSqrt3)};

    CoopRegion region;
    region.order = order;
    region.spacing = d;
    switch (order) {
        case 1: {
            region.bs_positions = {{0.0, 0.0}};
            const double r = d / kSqrt3;
            for (int k = 0; k < 6; ++k) {
                const double angle = std::numbers::pi / 6.0 + k * std::numbers::pi / 3.0;
                region.polygon.push_back({r * std::cos(angle), r * std::sin(angle)});
            }
            break;
        }
        case 2:
            region.bs_positions = {{0.0, 0.0}, {d, 0.0}};
            region.polygon = {{0.0, 0.0}, lower_corner, {d, 0.0}, upper_corner};
            break;
        case 3:
            region.bs_positions = {{0.0, 0.0}, {d, 0.0}, {d / 2.0, kSqrt3 * d / 2.0}};
            region.polygon = region.bs_positions;
            break;
    }
    return region;
}

std::vector<double> distances_to_bss(Point2D p, const CoopRegion& region) {
    std::vector<double> out;
    out.reserve(region.bs_positions.size());
    for (const Point2D& bs : region.bs_positions) {
        out.push_back(std::max(distance(p, bs), kMinDistanceM));
    }
    return out;
}

Point2D worst_point(const CoopRegion& region) {
    if (region.order < 1 || region.order > 3) throw UnsupportedOrder(region.order);
    const double d = region.spacing;
    // The same lattice point serves all three orders: the N = 1 hexagon vertex
    // at 30 degrees, the upper diamond vertex and the triangle centroid.
    return {d / 2.0, d / (2.0 * kSqrt3)};
}

std::vector<Point2D> region_grid(const CoopRegion& region, double pitch_m) {
    if (!(pitch_m > 0.0) || !std::isfinite(pitch_m)) {
        throw DomainError("grid pitch must be positive, got " + std::to_string(pitch_m));
    }
    double xmin = region.polygon.front().x, xmax = xmin;
    double ymin = region.polygon.front().y, ymax = ymin;
    for (const Point2D& v : region.polygon) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    const auto nx = static_cast<long>(std::floor((xmax - xmin) / pitch_m + 1e-9));
    const auto ny = static_cast<long>(std::floor((ymax - ymin) / pitch_m + 1e-9));

    std::vector<Point2D> grid;
    for (long j = 0; j <= ny; ++j) {
        for (long i = 0; i <= nx; ++i) {
            const Point2D p{xmin + static_cast<double>(i) * pitch_m,
                            ymin + static_cast<double>(j) * pitch_m};
            if (region.contains(p)) grid.push_back(p);
        }
    }
    return grid;
}

}  // namespace compplan
