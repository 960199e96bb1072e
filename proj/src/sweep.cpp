#include "ssmap/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ssmap/errors.hpp"

namespace ssmap {

namespace {

void check_axis(const std::vector<double>& values, const char* name) {
    if (values.empty())
        throw ValidationError(std::string("sweep axis ") + name + " is empty");
    double prev = 0.0;
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError(std::string("sweep axis ") + name +
                                  " must be strictly positive");
        if (v <= prev)
            throw ValidationError(std::string("sweep axis ") + name +
                                  " must be strictly increasing");
        prev = v;
    }
}

std::string fmt1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

// Trims trailing zeros so axis labels read "0.5", "1", "2".
std::string fmt_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void format_one_table(std::ostringstream& out, const SweepResult& result,
                      const std::string& title, double SweepCell::*value) {
    const auto& d1s = result.grid.d1_values;
    const auto& mdots = result.grid.mdot_values;

    std::vector<std::string> row_labels;
    row_labels.reserve(mdots.size());
    for (double m : mdots) row_labels.push_back("MF=" + fmt_label(m * 60.0) + " kg/min");

    std::vector<std::string> col_labels;
    col_labels.reserve(d1s.size());
    for (double d : d1s) col_labels.push_back("d=" + fmt_label(d * 1000.0) + " mm");

    std::size_t label_w = 0;
    for (const auto& s : row_labels) label_w = std::max(label_w, s.size());

    std::vector<std::size_t> col_w(d1s.size());
    for (std::size_t j = 0; j < d1s.size(); ++j) {
        col_w[j] = col_labels[j].size();
        for (std::size_t i = 0; i < mdots.size(); ++i)
            col_w[j] = std::max(col_w[j], fmt1(result.at(i, j).*value).size());
    }

    out << title << '\n';
    out << std::string(label_w, ' ');
    for (std::size_t j = 0; j < d1s.size(); ++j) {
        out << "  ";
        out << std::string(col_w[j] - col_labels[j].size(), ' ') << col_labels[j];
    }
    out << '\n';
    for (std::size_t i = 0; i < mdots.size(); ++i) {
        out << row_labels[i] << std::string(label_w - row_labels[i].size(), ' ');
        for (std::size_t j = 0; j < d1s.size(); ++j) {
            const std::string cell = fmt1(result.at(i, j).*value);
            out << "  " << std::string(col_w[j] - cell.size(), ' ') << cell;
        }
        out << '\n';
    }
}

} // namespace

SweepGrid SweepGrid::default_grid() {
    SweepGrid grid;
    grid.d1_values = {0.020, 0.035, 0.050};
    grid.mdot_values = {0.5 / 60.0, 1.0 / 60.0, 2.0 / 60.0};
    return grid;
}

const SweepCell& SweepResult::at(std::size_t mdot_idx, std::size_t d1_idx) const {
    return cells.at(mdot_idx * grid.d1_values.size() + d1_idx);
}

void validate_grid(const SweepGrid& grid) {
    check_axis(grid.d1_values, "d1");
    check_axis(grid.mdot_values, "mdot");
}

SweepResult run_sweep(const CollectorParams& base, const SweepGrid& grid,
                      const ClimateSeries& climate, double threshold,
                      bool rederive_capacities) {
    validate_grid(grid);

    SweepResult result;
    result.grid = grid;
    result.station = climate.station;
    result.cells.reserve(grid.mdot_values.size() * grid.d1_values.size());

    for (double mdot : grid.mdot_values) {
        for (double d1 : grid.d1_values) {
            CollectorParams params = base;
            params.mdot = mdot;
            params.d1 = d1;
            if (rederive_capacities) {
                params.c1.reset();
                params.c2.reset();
                params.c3.reset();
            }
            try {
                const PerformanceResult perf = evaluate(params, climate, threshold);
                result.cells.push_back({d1, mdot, perf.pf_p, perf.pf_t});
            } catch (const std::exception& e) {
                throw ValidationError("sweep cell (mdot=" + fmt_label(mdot * 60.0) +
                                      " kg/min, d1=" + fmt_label(d1 * 1000.0) +
                                      " mm): " + e.what());
            }
        }
    }
    return result;
}

BestConfig best_config(const SweepResult& result) {
    if (result.cells.empty()) throw ValidationError("empty sweep result");

    const SweepCell* best = &result.cells.front();
    for (const SweepCell& cell : result.cells) {
        if (cell.pf_p > best->pf_p ||
            (cell.pf_p == best->pf_p &&
             (cell.pf_t > best->pf_t ||
              (cell.pf_t == best->pf_t &&
               (cell.mdot < best->mdot ||
                (cell.mdot == best->mdot && cell.d1 < best->d1))))))
            best = &cell;
    }
    return {best->d1, best->mdot, best->pf_p, best->pf_t};
}

std::string format_tables(const SweepResult& result) {
    std::ostringstream out;
    format_one_table(out, result, "Yearly mean efficiency PF_p [%]",
                     &SweepCell::pf_p);
    out << '\n';
    format_one_table(out, result, "Operation time PF_t [%]", &SweepCell::pf_t);
    return out.str();
}

} // namespace ssmap
