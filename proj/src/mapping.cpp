#include "ssmap/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <json.hpp>

#include "ssmap/errors.hpp"

namespace ssmap {

namespace {

constexpr double kSnapDeg = 1e-9;

void check_spec(const GridSpec& spec) {
    if (!(spec.lat_min < spec.lat_max) || !(spec.lon_min < spec.lon_max))
        throw ValidationError("grid bounds must be ordered (min < max)");
    if (!(spec.resolution > 0.0) || !std::isfinite(spec.resolution))
        throw ValidationError("grid resolution must be > 0");
    if (spec.lat_min < -90.0 || spec.lat_max > 90.0)
        throw ValidationError("grid latitude out of [-90, 90]");
}

double field_value(const StationIndicator& point, const std::string& field) {
    const auto it = point.values.find(field);
    if (it == point.values.end())
        throw ValidationError("station " + point.station.id +
                              " has no field '" + field + "'");
    return it->second;
}

} // namespace

std::size_t GridSpec::rows() const {
    return static_cast<std::size_t>(
               std::llround((lat_max - lat_min) / resolution)) +
           1;
}

std::size_t GridSpec::cols() const {
    return static_cast<std::size_t>(
               std::llround((lon_max - lon_min) / resolution)) +
           1;
}

double RasterGrid::at(std::size_t row, std::size_t col) const {
    return values.at(row * spec.cols() + col);
}

std::vector<StationIndicator> collect(std::vector<StationIndicator> indicators) {
    if (indicators.empty()) throw ValidationError("no station indicators to collect");
    for (const auto& ind : indicators) {
        validate_station(ind.station);
        for (const auto& [name, value] : ind.values) {
            if (name.empty())
                throw ValidationError("station " + ind.station.id +
                                      " carries an unnamed indicator");
            if (!std::isfinite(value))
                throw ValidationError("station " + ind.station.id + " field '" +
                                      name + "' is not finite");
        }
    }
    std::stable_sort(indicators.begin(), indicators.end(),
                     [](const StationIndicator& a, const StationIndicator& b) {
                         return a.station.id < b.station.id;
                     });
    for (std::size_t i = 1; i < indicators.size(); ++i) {
        if (indicators[i].station.id == indicators[i - 1].station.id)
            throw ValidationError("duplicate station id '" +
                                  indicators[i].station.id + "'");
    }
    return indicators;
}

double great_circle_deg(double lat1, double lon1, double lat2, double lon2) {
    constexpr double kDeg = std::numbers::pi / 180.0;
    const double dlat = (lat2 - lat1) * kDeg;
    const double dlon = (lon2 - lon1) * kDeg;
    const double s1 = std::sin(dlat / 2.0);
    const double s2 = std::sin(dlon / 2.0);
    const double a =
        s1 * s1 + std::cos(lat1 * kDeg) * std::cos(lat2 * kDeg) * s2 * s2;
    const double c = 2.0 * std::asin(std::min(1.0, std::sqrt(a)));
    return c / kDeg;
}

double idw_at(const std::vector<StationIndicator>& points,
              const std::string& field, double lat, double lon, double power,
              double cutoff_deg, double nodata) {
    if (points.empty()) throw ValidationError("no stations for interpolation");
    if (!(power > 0.0)) throw ValidationError("idw power must be > 0");
    if (!(cutoff_deg > 0.0)) throw ValidationError("idw cutoff must be > 0");

    double weight_sum = 0.0;
    double value_sum = 0.0;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& point : points) {
        const double d = great_circle_deg(lat, lon, point.station.latitude,
                                          point.station.longitude);
        if (d <= kSnapDeg) return field_value(point, field);
        nearest = std::min(nearest, d);
        const double w = 1.0 / std::pow(d, power);
        weight_sum += w;
        value_sum += w * field_value(point, field);
    }
    if (nearest > cutoff_deg) return nodata;
    return value_sum / weight_sum;
}

RasterGrid idw_interpolate(const std::vector<StationIndicator>& points,
                           const std::string& field, const GridSpec& spec,
                           double power, double cutoff_deg) {
    check_spec(spec);
    for (const auto& point : points) field_value(point, field); // fail fast

    RasterGrid grid;
    grid.spec = spec;
    const std::size_t rows = spec.rows();
    const std::size_t cols = spec.cols();
    grid.values.resize(rows * cols);

    for (std::size_t r = 0; r < rows; ++r) {
        // Row 0 is the northern edge.
        const double lat = spec.lat_max - static_cast<double>(r) * spec.resolution;
        for (std::size_t c = 0; c < cols; ++c) {
            const double lon =
                spec.lon_min + static_cast<double>(c) * spec.resolution;
            grid.values[r * cols + c] =
                idw_at(points, field, lat, lon, power, cutoff_deg, grid.nodata);
        }
    }
    return grid;
}

std::string write_station_csv(const std::vector<StationIndicator>& indicators) {
    std::set<std::string> fields;
    for (const auto& ind : indicators)
        for (const auto& [name, value] : ind.values) fields.insert(name);

    std::string out = "id,name,lat,lon";
    for (const auto& f : fields) {
        out += ',';
        out += f;
    }
    out += '\n';

    for (const auto& ind : indicators) {
        out += ind.station.id;
        out += ',';
        out += ind.station.name;
        out += ',';
        out += fmt_double(ind.station.latitude);
        out += ',';
        out += fmt_double(ind.station.longitude);
        for (const auto& f : fields) {
            out += ',';
            const auto it = ind.values.find(f);
            if (it != ind.values.end()) out += fmt_double(it->second);
        }
        out += '\n';
    }
    return out;
}

std::vector<StationIndicator> read_station_csv(std::string_view text) {
    std::vector<std::string> lines;
    {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string_view line = nl == std::string_view::npos
                                        ? text.substr(pos)
                                        : text.substr(pos, nl - pos);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.emplace_back(line);
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
        while (!lines.empty() && lines.back().empty()) lines.pop_back();
    }
    if (lines.empty()) throw ParseError("empty station CSV", 1);

    const auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) {
                out.push_back(line.substr(pos));
                break;
            }
            out.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        return out;
    };

    const auto header = split(lines[0]);
    if (header.size() < 4 || header[0] != "id" || header[1] != "name" ||
        header[2] != "lat" || header[3] != "lon")
        throw ParseError("station CSV header must start with id,name,lat,lon", 1);

    const auto parse_num = [](const std::string& tok, long line_no,
                              const std::string& what) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ParseError("non-numeric " + what + " '" + tok + "'", line_no);
        }
    };

    std::vector<StationIndicator> out;
    out.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const long line_no = static_cast<long>(i) + 1;
        const auto toks = split(lines[i]);
        if (toks.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) +
                                 " columns, got " + std::to_string(toks.size()),
                             line_no);
        StationIndicator ind;
        ind.station.id = toks[0];
        ind.station.name = toks[1];
        ind.station.latitude = parse_num(toks[2], line_no, "latitude");
        ind.station.longitude = parse_num(toks[3], line_no, "longitude");
        for (std::size_t f = 4; f < header.size(); ++f) {
            if (toks[f].empty()) continue;
            ind.values[header[f]] = parse_num(toks[f], line_no, header[f]);
        }
        out.push_back(std::move(ind));
    }
    return out;
}

std::string write_geojson(const std::vector<StationIndicator>& indicators) {
    nlohmann::ordered_json root;
    root["type"] = "FeatureCollection";
    auto& features = root["features"] = nlohmann::ordered_json::array();
    for (const auto& ind : indicators) {
        nlohmann::ordered_json feature;
        feature["type"] = "Feature";
        feature["geometry"]["type"] = "Point";
        feature["geometry"]["coordinates"] = {ind.station.longitude,
                                              ind.station.latitude};
        auto& props = feature["properties"];
        props["id"] = ind.station.id;
        props["name"] = ind.station.name;
        for (const auto& [name, value] : ind.values) props[name] = value;
        features.push_back(std::move(feature));
    }
    return root.dump(2) + "\n";
}

std::string write_ascii_grid(const RasterGrid& grid) {
    const std::size_t rows = grid.spec.rows();
    const std::size_t cols = grid.spec.cols();
    if (grid.values.size() != rows * cols)
        throw ValidationError("raster value count does not match its spec");

    std::string out;
    out.reserve(grid.values.size() * 8 + 160);
    out += "ncols " + std::to_string(cols) + "\n";
    out += "nrows " + std::to_string(rows) + "\n";
    out += "xllcorner " + fmt_double(grid.spec.lon_min) + "\n";
    out += "yllcorner " + fmt_double(grid.spec.lat_min) + "\n";
    out += "cellsize " + fmt_double(grid.spec.resolution) + "\n";
    out += "NODATA_value " + fmt_double(grid.nodata) + "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c > 0) out += ' ';
            out += fmt_double(grid.at(r, c));
        }
        out += '\n';
    }
    return out;
}

Colormap Colormap::cold_to_warm() {
    return {{{0, 0, 255}, {0, 255, 255}, {255, 255, 0}, {255, 0, 0}}};
}

std::vector<std::uint8_t> write_ppm(const RasterGrid& grid,
                                    const Colormap& colormap) {
    if (colormap.stops.size() < 2)
        throw ValidationError("colormap needs at least 2 stops");
    const std::size_t rows = grid.spec.rows();
    const std::size_t cols = grid.spec.cols();
    if (grid.values.size() != rows * cols)
        throw ValidationError("raster value count does not match its spec");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : grid.values) {
        if (v == grid.nodata) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const bool flat = !(lo < hi); // all-nodata or constant field

    const std::string header =
        "P6\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + rows * cols * 3);

    const std::size_t segments = colormap.stops.size() - 1;
    for (double v : grid.values) {
        if (v == grid.nodata) {
            out.insert(out.end(), {255, 255, 255});
            continue;
        }
        const double t =
            flat ? 0.0 : std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
        const double pos = t * static_cast<double>(segments);
        const std::size_t seg =
            std::min(static_cast<std::size_t>(pos), segments - 1);
        const double frac = pos - static_cast<double>(seg);
        const auto& a = colormap.stops[seg];
        const auto& b = colormap.stops[seg + 1];
        const auto mix = [frac](std::uint8_t x, std::uint8_t y) {
            return static_cast<std::uint8_t>(
                std::lround(static_cast<double>(x) +
                            frac * (static_cast<double>(y) - x)));
        };
        out.insert(out.end(), {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)});
    }
    return out;
}

} // namespace ssmap
