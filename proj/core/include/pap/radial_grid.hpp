#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace pap {

// r = g(x): uniform step c near the origin, exponential stretch with scale s
// beyond x_t. x is measured in base-grid steps.
struct GridMap {
    double r0 = 0.0;
    double c = 0.1;
    double x_t = 0.0;
    double s = 1.0;
    bool stretched = true;

    double r(double x) const;
    double d1(double x) const;
    double d2(double x) const;
    double d3(double x) const;
    double x_of(double r) const;
};

class RadialGrid {
public:
    // Nodes at x = i * 2^-level, i = 0 .. base_intervals * 2^level.
    RadialGrid(GridMap map, int base_intervals, int level);

    const GridMap& map() const { return map_; }
    int level() const { return level_; }
    int base_intervals() const { return base_; }
    double hx() const { return hx_; }
    std::size_t size() const { return r_.size(); }

    std::span<const double> r() const { return r_; }
    std::span<const double> jacobian() const { return jac_; }
    // 3/4 (g''/g')^2 - 1/2 g'''/g', the Liouville correction.
    std::span<const double> schwarzian() const { return schw_; }
    // Trapezoid weights for integrals over r.
    std::span<const double> weights() const { return w_; }

    double r_front() const { return r_.front(); }
    double r_back() const { return r_.back(); }

    std::shared_ptr<const RadialGrid> refined() const;
    bool same_nodes(const RadialGrid& o) const;

private:
    GridMap map_;
    int base_, level_;
    double hx_;
    std::vector<double> r_, jac_, schw_, w_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Lays out a map between r_start and r_end so that the local step never
// exceeds wavelength(r)/ppw for r >= r_resolve. wavelength may return +inf.
GridMap design_grid(const std::function<double(double)>& wavelength, double r_start, double r_end,
                    double r_resolve, int ppw);
int base_intervals_for(const GridMap& map, double r_end);

}  // namespace pap
