#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fracwave {

/// Ordered time grid on [0, T], starting at 0. Uniform grids remember
/// their step so dyadic refinements share node values bit-exactly.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> points) : points_(std::move(points)) {
        if (points_.size() < 2)
            throw std::invalid_argument("TimeGrid: need at least 2 points");
        if (points_.front() != 0.0)
            throw std::invalid_argument("TimeGrid: first point must be 0");
        for (std::size_t j = 1; j < points_.size(); ++j)
            if (!(points_[j] > points_[j - 1]))
                throw std::invalid_argument("TimeGrid: points must be strictly increasing");
    }

    /// n+1 equispaced points t_j = j*T/n. Nodes of the n-step grid coincide
    /// bit-exactly with every even node of the 2n-step grid.
    static TimeGrid uniform(double final_time, std::size_t steps) {
        if (!(final_time > 0.0))
            throw std::invalid_argument("TimeGrid: final time must be positive");
        if (steps == 0)
            throw std::invalid_argument("TimeGrid: need at least one step");
        std::vector<double> pts(steps + 1);
        for (std::size_t j = 0; j <= steps; ++j)
            pts[j] = final_time * (static_cast<double>(j) / static_cast<double>(steps));
        pts[0] = 0.0;
        pts[steps] = final_time;
        TimeGrid g(std::move(pts));
        g.step_ = final_time / static_cast<double>(steps);
        return g;
    }

    std::size_t size() const { return points_.size(); }
    std::size_t steps() const { return points_.size() - 1; }
    double operator[](std::size_t j) const { return points_[j]; }
    double final_time() const { return points_.back(); }
    const std::vector<double>& points() const { return points_; }

    /// Step size, available only for grids built by uniform().
    std::optional<double> step() const { return step_; }

    /// Index in this grid of every node of `coarse`; throws if some node is missing.
    std::vector<std::size_t> indices_of(const TimeGrid& coarse) const {
        std::vector<std::size_t> idx;
        idx.reserve(coarse.size());
        std::size_t j = 0;
        for (double t : coarse.points()) {
            while (j < points_.size() && points_[j] < t) ++j;
            if (j == points_.size() || points_[j] != t)
                throw std::invalid_argument("TimeGrid: coarse node not present in fine grid");
            idx.push_back(j);
        }
        return idx;
    }

    bool operator==(const TimeGrid& other) const { return points_ == other.points_; }

private:
    std::vector<double> points_;
    std::optional<double> step_;
};

}  // namespace fracwave
