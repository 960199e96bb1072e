#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ssmap/climate.hpp"

namespace ssmap {

// One station's scalar indicators, keyed by field name (e.g. "pf_p").
struct StationIndicator {
    Station station;
    std::map<std::string, double> values;
};

// Geographic bounding box with a uniform cell size. Nodes sit on the
// bounds inclusively, so cols = round((lon_max-lon_min)/res) + 1.
struct GridSpec {
    double lat_min = 35.0;
    double lat_max = 71.0;
    double lon_min = -11.0;
    double lon_max = 32.0;
    double resolution = 0.5; // degrees

    std::size_t rows() const;
    std::size_t cols() const;
};

// Row-major raster, northernmost row first.
struct RasterGrid {
    GridSpec spec;
    std::vector<double> values; // rows*cols, nodata where unreachable
    double nodata = -9999.0;

    double at(std::size_t row, std::size_t col) const;
};

// Sorts by station id and checks indicator invariants.
// Throws ValidationError on duplicate ids or non-finite values.
std::vector<StationIndicator> collect(std::vector<StationIndicator> indicators);

// Great-circle distance between two points, expressed in degrees of
// arc (haversine; 1 degree = 111.2 km on the reference sphere).
double great_circle_deg(double lat1, double lon1, double lat2, double lon2);

// Inverse-distance-weighted estimate of one field at (lat, lon).
// Exact at stations (snap radius 1e-9 deg); nodata when every station
// is farther than cutoff_deg.
double idw_at(const std::vector<StationIndicator>& points,
              const std::string& field, double lat, double lon, double power,
              double cutoff_deg, double nodata);

// Rasterizes a field over the grid. power > 0 (default 2);
// cutoff_deg > 0 (default 10). Throws ValidationError when the field
// is missing from any station or the grid bounds are malformed.
RasterGrid idw_interpolate(const std::vector<StationIndicator>& points,
                           const std::string& field, const GridSpec& spec,
                           double power = 2.0, double cutoff_deg = 10.0);

// CSV with header id,name,lat,lon,<fields...>; fields are the union of
// all indicator names, sorted. Missing values are left empty.
std::string write_station_csv(const std::vector<StationIndicator>& indicators);

// Inverse of write_station_csv. Empty cells become absent fields.
// Throws ParseError with a line number on malformed input.
std::vector<StationIndicator> read_station_csv(std::string_view text);

// GeoJSON FeatureCollection of Point features, coordinates (lon, lat),
// indicator values carried as properties.
std::string write_geojson(const std::vector<StationIndicator>& indicators);

// ESRI-style ASCII grid (ncols/nrows/xllcorner/yllcorner/cellsize/
// NODATA_value header, then rows north to south).
std::string write_ascii_grid(const RasterGrid& grid);

// Linear multi-stop colormap over [min, max] of the grid's data values.
struct Colormap {
    struct Stop {
        std::uint8_t r, g, b;
    };
    std::vector<Stop> stops;

    // Blue -> cyan -> yellow -> red, the usual cold-to-warm ramp.
    static Colormap cold_to_warm();
};

// Binary portable pixel map (P6), one pixel per grid node, nodata
// rendered white. Endpoint values map to the endpoint colors exactly.
std::vector<std::uint8_t> write_ppm(const RasterGrid& grid,
                                    const Colormap& colormap);

} // namespace ssmap
