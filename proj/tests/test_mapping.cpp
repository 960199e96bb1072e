#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include <json.hpp>

#include "ssmap/errors.hpp"
#include "ssmap/mapping.hpp"

using namespace ssmap;

namespace {

StationIndicator make_point(const std::string& id, double lat, double lon,
                            double pf_p) {
    StationIndicator ind;
    ind.station.id = id;
    ind.station.name = "Station " + id;
    ind.station.latitude = lat;
    ind.station.longitude = lon;
    ind.values["pf_p"] = pf_p;
    return ind;
}

} // namespace

TEST_CASE("collect sorts by id and rejects duplicates") {
    auto sorted = collect({make_point("C", 50, 4, 30), make_point("A", 52, 5, 40),
                           make_point("B", 48, 6, 35)});
    REQUIRE(sorted.size() == 3);
    CHECK(sorted[0].station.id == "A");
    CHECK(sorted[2].station.id == "C");

    CHECK_THROWS_WITH_AS(
        collect({make_point("A", 50, 4, 30), make_point("A", 52, 5, 40)}),
        doctest::Contains("duplicate"), ValidationError);
    CHECK_THROWS_AS(collect({}), ValidationError);

    StationIndicator bad = make_point("X", 50, 4, 30);
    bad.values["pf_p"] = std::nan("");
    CHECK_THROWS_AS(collect({bad}), ValidationError);
}

TEST_CASE("great-circle distances behave on the sphere") {
    CHECK(great_circle_deg(52.0, 5.0, 52.0, 5.0) == 0.0);
    CHECK(great_circle_deg(50.0, 5.0, 51.0, 5.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(great_circle_deg(0.0, 10.0, 0.0, 11.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // A longitude degree shrinks with cos(latitude).
    CHECK(great_circle_deg(60.0, 10.0, 60.0, 11.0) ==
          doctest::Approx(0.5).epsilon(1e-4));
    // Symmetry.
    CHECK(great_circle_deg(40.0, -3.0, 52.0, 5.0) ==
          doctest::Approx(great_circle_deg(52.0, 5.0, 40.0, -3.0)).epsilon(1e-14));
}

TEST_CASE("inverse-distance weighting is exact, bounded and cut off") {
    const std::vector<StationIndicator> points = {
        make_point("A", 50.0, 5.0, 10.0), make_point("B", 50.0, 7.0, 30.0)};

    SUBCASE("station locations return their own value") {
        CHECK(idw_at(points, "pf_p", 50.0, 5.0, 2.0, 10.0, -9999.0) == 10.0);
        CHECK(idw_at(points, "pf_p", 50.0, 7.0, 2.0, 10.0, -9999.0) == 30.0);
    }
    SUBCASE("the midpoint weighs both stations equally") {
        CHECK(idw_at(points, "pf_p", 50.0, 6.0, 2.0, 10.0, -9999.0) ==
              doctest::Approx(20.0).epsilon(1e-9));
    }
    SUBCASE("nodes beyond the cutoff get nodata") {
        CHECK(idw_at(points, "pf_p", 75.0, 6.0, 2.0, 10.0, -9999.0) == -9999.0);
    }
    SUBCASE("a single station paints its value everywhere in range") {
        const std::vector<StationIndicator> one = {make_point("A", 50, 5, 17.5)};
        CHECK(idw_at(one, "pf_p", 51.0, 6.0, 2.0, 10.0, -9999.0) ==
              doctest::Approx(17.5).epsilon(1e-12));
    }
    SUBCASE("unknown fields are rejected") {
        CHECK_THROWS_AS(idw_at(points, "nope", 50.0, 6.0, 2.0, 10.0, -9999.0),
                        ValidationError);
        GridSpec spec;
        CHECK_THROWS_AS(idw_interpolate(points, "nope", spec), ValidationError);
    }
}

TEST_CASE("interpolated grids stay within the station value range") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> lat(40.0, 60.0);
    std::uniform_real_distribution<double> lon(-5.0, 20.0);
    std::uniform_real_distribution<double> val(5.0, 95.0);

    std::vector<StationIndicator> points;
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i < 20; ++i) {
        const double v = val(rng);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        points.push_back(make_point("P" + std::to_string(i), lat(rng), lon(rng), v));
    }

    GridSpec spec;
    spec.lat_min = 38.0;
    spec.lat_max = 62.0;
    spec.lon_min = -8.0;
    spec.lon_max = 22.0;
    spec.resolution = 1.0;
    const RasterGrid grid = idw_interpolate(points, "pf_p", spec);
    for (double v : grid.values) {
        if (v == grid.nodata) continue;
        CHECK(v >= lo);
        CHECK(v <= hi);
    }
}

TEST_CASE("grid dimensions follow the bounds and resolution") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> base(-10.0, 40.0);
    std::uniform_int_distribution<int> cells(3, 40);
    std::uniform_real_distribution<double> res(0.25, 2.0);
    for (int i = 0; i < 5; ++i) {
        GridSpec spec;
        spec.resolution = res(rng);
        spec.lat_min = base(rng);
        spec.lat_max = spec.lat_min + cells(rng) * spec.resolution;
        spec.lon_min = base(rng);
        spec.lon_max = spec.lon_min + cells(rng) * spec.resolution;
        const auto rows =
            static_cast<std::size_t>(
                std::llround((spec.lat_max - spec.lat_min) / spec.resolution)) +
            1;
        const auto cols =
            static_cast<std::size_t>(
                std::llround((spec.lon_max - spec.lon_min) / spec.resolution)) +
            1;
        CHECK(spec.rows() == rows);
        CHECK(spec.cols() == cols);
    }

    GridSpec bad;
    bad.lat_min = 50.0;
    bad.lat_max = 40.0;
    CHECK_THROWS_AS(idw_interpolate({make_point("A", 45, 5, 1)}, "pf_p", bad),
                    ValidationError);
}

TEST_CASE("station CSV writes sorted fields and round-trips") {
    auto a = make_point("A", 52.0, 5.25, 41.5);
    a.values["pf_t"] = 31.5;
    auto b = make_point("B", 40.4, -3.7, 55.0);
    b.values["pf_t"] = 60.25;
    b.values["best_d1_mm"] = 20.0;

    const std::string csv = write_station_csv({a, b});
    CHECK(csv.find("id,name,lat,lon,best_d1_mm,pf_p,pf_t\n") == 0);
    CHECK(csv.find("A,Station A,52,5.25,,41.5,31.5\n") != std::string::npos);

    const auto parsed = read_station_csv(csv);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].station.id == "A");
    CHECK(parsed[0].station.latitude == 52.0);
    CHECK(parsed[0].values.count("best_d1_mm") == 0); // empty cell skipped
    CHECK(parsed[1].values.at("best_d1_mm") == 20.0);
    CHECK(parsed[1].values.at("pf_t") == 60.25);

    SUBCASE("metadata-only output when no fields exist") {
        StationIndicator bare;
        bare.station = a.station;
        CHECK(write_station_csv({bare}).find("id,name,lat,lon\n") == 0);
    }
    SUBCASE("malformed rows carry line numbers") {
        CHECK_THROWS_WITH_AS(read_station_csv("id,name,lat,lon\nA,x,4\n"),
                             doctest::Contains("line 2"), ParseError);
        CHECK_THROWS_AS(read_station_csv("wrong,header\n"), ParseError);
    }
}

TEST_CASE("GeoJSON output is a feature collection in lon-lat order") {
    const auto text = write_geojson(
        {make_point("A", 52.0, 5.25, 41.5), make_point("B", 40.4, -3.7, 55.0)});
    const auto root = nlohmann::json::parse(text);
    CHECK(root.at("type") == "FeatureCollection");
    REQUIRE(root.at("features").size() == 2);
    const auto& first = root.at("features").at(0);
    CHECK(first.at("type") == "Feature");
    CHECK(first.at("geometry").at("type") == "Point");
    CHECK(first.at("geometry").at("coordinates").at(0) == 5.25); // lon first
    CHECK(first.at("geometry").at("coordinates").at(1) == 52.0);
    CHECK(first.at("properties").at("pf_p") == 41.5);
    CHECK(first.at("properties").at("id") == "A");
}

TEST_CASE("ASCII grid header carries the six standard fields") {
    GridSpec spec;
    spec.lat_min = 40.0;
    spec.lat_max = 42.0;
    spec.lon_min = 5.0;
    spec.lon_max = 8.0;
    spec.resolution = 1.0;

    RasterGrid grid;
    grid.spec = spec;
    grid.values = {1, 2, 3, 4, 5, 6, 7, 8, -9999.0, 10, 11, 12};

    const std::string text = write_ascii_grid(grid);
    CHECK(text.find("ncols 4\n") == 0);
    CHECK(text.find("nrows 3\n") != std::string::npos);
    CHECK(text.find("xllcorner 5\n") != std::string::npos);
    CHECK(text.find("yllcorner 40\n") != std::string::npos);
    CHECK(text.find("cellsize 1\n") != std::string::npos);
    CHECK(text.find("NODATA_value -9999\n") != std::string::npos);
    CHECK(text.find("1 2 3 4\n") != std::string::npos);
    CHECK(text.find("5 6 7 8\n") != std::string::npos);

    grid.values.pop_back();
    CHECK_THROWS_AS(write_ascii_grid(grid), ValidationError);
}

TEST_CASE("pixel map colors endpoints exactly and nodata white") {
    GridSpec spec;
    spec.lat_min = 40.0;
    spec.lat_max = 41.0;
    spec.lon_min = 5.0;
    spec.lon_max = 6.0;
    spec.resolution = 1.0;

    RasterGrid grid;
    grid.spec = spec;
    grid.values = {10.0, 20.0, 30.0, -9999.0}; // 2x2

    const Colormap map = Colormap::cold_to_warm();
    const auto bytes = write_ppm(grid, map);

    const std::string header = "P6\n2 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 12);
    CHECK(std::equal(header.begin(), header.end(), bytes.begin()));

    const auto* px = bytes.data() + header.size();
    CHECK(px[0] == map.stops.front().r); // min -> first stop
    CHECK(px[1] == map.stops.front().g);
    CHECK(px[2] == map.stops.front().b);
    CHECK(px[6] == map.stops.back().r); // max -> last stop
    CHECK(px[7] == map.stops.back().g);
    CHECK(px[8] == map.stops.back().b);
    CHECK(px[9] == 255); // nodata -> white
    CHECK(px[10] == 255);
    CHECK(px[11] == 255);

    SUBCASE("a constant field does not divide by zero") {
        grid.values = {7.0, 7.0, 7.0, 7.0};
        const auto flat = write_ppm(grid, map);
        CHECK(flat.size() == header.size() + 12);
        CHECK(flat[header.size()] == map.stops.front().r);
    }
}
