#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <doctest.h>

#include "ssmap/climate.hpp"
#include "ssmap/errors.hpp"

using namespace ssmap;

namespace {

ClimateSeries small_synthetic() {
    SyntheticProfile profile;
    Station st;
    st.id = "NL01";
    st.name = "Test Site";
    st.latitude = 52.1;
    st.longitude = 5.18;
    st.elevation = 2.0;
    return generate_synthetic(profile, st);
}

std::filesystem::path temp_dir(const char* tag) {
    auto dir = std::filesystem::temp_directory_path() /
               (std::string("ssmap_test_") + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("fmt_double survives a parse round trip") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> mag(-12.0, 12.0);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double v = mant(rng) * std::pow(10.0, mag(rng));
        const std::string s = fmt_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(fmt_double(1.0) == "1");
    CHECK(fmt_double(0.5) == "0.5");
    CHECK(fmt_double(-0.0) == "-0");
}

TEST_CASE("leap years follow the Gregorian rule") {
    CHECK(is_leap_year(2000));
    CHECK(is_leap_year(2004));
    CHECK_FALSE(is_leap_year(1900));
    CHECK_FALSE(is_leap_year(2001));
}

TEST_CASE("climate file writing and parsing round-trips bit for bit") {
    const ClimateSeries original = small_synthetic();
    const std::string text = write_wac(original);
    const ClimateSeries parsed = parse_wac(text);

    CHECK(parsed.station.id == original.station.id);
    CHECK(parsed.station.name == original.station.name);
    CHECK(parsed.station.latitude == original.station.latitude);
    CHECK(parsed.station.longitude == original.station.longitude);
    CHECK(parsed.station.elevation == original.station.elevation);
    CHECK(parsed.start_year == original.start_year);
    REQUIRE(parsed.records.size() == original.records.size());
    for (std::size_t i = 0; i < parsed.records.size(); ++i) {
        CHECK(parsed.records[i].isgh == original.records[i].isgh);
        CHECK(parsed.records[i].isd == original.records[i].isd);
        CHECK(parsed.records[i].ta == original.records[i].ta);
        CHECK(parsed.records[i].ilah == original.records[i].ilah);
    }
    // And the text itself is a fixed point.
    CHECK(write_wac(parsed) == text);
}

TEST_CASE("empty station names use the dash marker") {
    ClimateSeries series = small_synthetic();
    series.station.name.clear();
    const std::string text = write_wac(series);
    CHECK(text.find("station,NL01,-,") != std::string::npos);
    CHECK(parse_wac(text).station.name.empty());

    series.station.name = "-";
    CHECK_THROWS_AS(write_wac(series), ValidationError);
}

TEST_CASE("parse errors carry line numbers") {
    const std::string good = write_wac(small_synthetic());

    SUBCASE("wrong magic") {
        std::string bad = good;
        bad.replace(0, 11, "SOMETHING 9");
        CHECK_THROWS_WITH_AS(parse_wac(bad),
                             doctest::Contains("line 1"), ParseError);
    }
    SUBCASE("wrong column count") {
        std::string bad = good;
        const auto pos = bad.find('\n', bad.find('\n', bad.find('\n', bad.find('\n') + 1) + 1) + 1);
        bad.insert(pos + 1, "1,2,3\n");
        try {
            parse_wac(bad);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 5);
            CHECK(std::string(e.what()).find("9 columns") != std::string::npos);
        }
    }
    SUBCASE("non-numeric field") {
        std::string bad = good;
        bad.replace(bad.find("300\n"), 3, "abc");
        CHECK_THROWS_AS(parse_wac(bad), ParseError);
    }
    SUBCASE("row count mismatch") {
        std::string bad = good;
        bad.resize(bad.rfind('\n', bad.size() - 2) + 1); // drop last row
        CHECK_THROWS_WITH_AS(parse_wac(bad),
                             doctest::Contains("row count mismatch"), ParseError);
    }
    SUBCASE("leap row count needs a leap year") {
        std::string text = good;
        for (int i = 0; i < 24; ++i) text += "0,0,0.5,1,50,1,180,0,300\n";
        CHECK_THROWS_WITH_AS(parse_wac(text), doctest::Contains("leap"),
                             ParseError);
    }
    SUBCASE("out of range value reports its line") {
        std::string bad = good;
        // hrel is column 5; set hour 0 (line 5) hrel to 150.
        const auto header_end = bad.find("isgh,isd,ci,ta,hrel,ws,wd,rn,ilah\n");
        const auto row_start = header_end + 34;
        const auto row_end = bad.find('\n', row_start);
        bad.replace(row_start, row_end - row_start, "0,0,0.5,1,150,1,180,0,300");
        try {
            parse_wac(bad);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 5);
            CHECK(std::string(e.what()).find("hrel") != std::string::npos);
        }
    }
}

TEST_CASE("record validation catches each field family") {
    ClimateRecord rec;
    rec.ci = 0.5;
    rec.hrel = 50.0;
    rec.wd = 180.0;
    validate_record(rec, 0);

    SUBCASE("negative radiation") {
        rec.isgh = -1.0;
        CHECK_THROWS_AS(validate_record(rec, 3), ValidationError);
    }
    SUBCASE("diffuse above global") {
        rec.isgh = 100.0;
        rec.isd = 102.0; // slack is +1
        CHECK_THROWS_WITH_AS(validate_record(rec, 3),
                             doctest::Contains("isd"), ValidationError);
        rec.isd = 100.9;
        validate_record(rec, 3);
    }
    SUBCASE("wind direction is half-open") {
        rec.wd = 360.0;
        CHECK_THROWS_AS(validate_record(rec, 1), ValidationError);
        rec.wd = 359.9;
        validate_record(rec, 1);
    }
    SUBCASE("non-finite temperature") {
        rec.ta = std::nan("");
        CHECK_THROWS_AS(validate_record(rec, 2), ValidationError);
    }
}

TEST_CASE("lenient parsing leaves gaps as NaN for later repair") {
    std::string text = write_wac(small_synthetic());
    const auto header_end = text.find("isgh,isd,ci,ta,hrel,ws,wd,rn,ilah\n");
    const auto row_start = header_end + 34;
    const auto row_end = text.find('\n', row_start);
    text.replace(row_start, row_end - row_start, "0,0,0.5,,50,1,180,0,300");

    CHECK_THROWS_AS(parse_wac(text), ParseError);
    const ClimateSeries series = parse_wac_lenient(text);
    CHECK(std::isnan(series.records[0].ta));
    CHECK(series.records[1].ta == small_synthetic().records[1].ta);
}

TEST_CASE("gap filling interpolates runs of at most three hours") {
    ClimateSeries series = small_synthetic();

    SUBCASE("interior gap is linearly interpolated") {
        // Neighbors 10 and 13 around a 2 h gap fill as 11, 12.
        series.records[9].ta = 10.0;
        series.records[10].ta = std::nan("");
        series.records[11].ta = std::nan("");
        series.records[12].ta = 13.0;
        const auto [fixed, issues] = validate_series(series, true);
        REQUIRE(issues.size() == 1);
        CHECK(issues[0].field == "ta");
        CHECK(issues[0].first_hour == 10);
        CHECK(issues[0].length == 2);
        CHECK(fixed.records[10].ta == doctest::Approx(11.0).epsilon(1e-12));
        CHECK(fixed.records[11].ta == doctest::Approx(12.0).epsilon(1e-12));

        // Repair is idempotent: a second pass reports nothing.
        const auto [again, issues2] = validate_series(fixed, true);
        CHECK(issues2.empty());
        CHECK(again.records[10].ta == fixed.records[10].ta);
    }
    SUBCASE("boundary gap holds the nearest value") {
        series.records[0].ta = std::nan("");
        series.records[1].ta = std::nan("");
        const double anchor = series.records[2].ta;
        const auto [fixed, issues] = validate_series(series, true);
        REQUIRE(issues.size() == 1);
        CHECK(fixed.records[0].ta == anchor);
        CHECK(fixed.records[1].ta == anchor);
    }
    SUBCASE("a four-hour gap is refused") {
        for (int i = 100; i < 104; ++i) series.records[i].hrel = -5.0;
        CHECK_THROWS_WITH_AS(validate_series(series, true),
                             doctest::Contains("hrel"), ValidationError);
    }
    SUBCASE("without gap filling any violation throws") {
        series.records[7].ws = -1.0;
        CHECK_THROWS_AS(validate_series(series, false), ValidationError);
    }
    SUBCASE("out-of-range values are treated as gaps too") {
        series.records[50].hrel = 180.0;
        const auto [fixed, issues] = validate_series(series, true);
        REQUIRE(issues.size() == 1);
        CHECK(fixed.records[50].hrel == 50.0); // neighbors are both 50
    }
}

TEST_CASE("plain CSV import maps named columns") {
    const ClimateSeries reference = small_synthetic();

    // Column order deliberately scrambled: ta, junk, isgh, isd.
    std::string csv;
    for (const auto& rec : reference.records) {
        csv += fmt_double(rec.ta);
        csv += ",999,";
        csv += fmt_double(rec.isgh);
        csv += ',';
        csv += fmt_double(rec.isd);
        csv += '\n';
    }

    const std::map<std::string, int> columns = {
        {"ta", 0}, {"isgh", 2}, {"isd", 3}};
    const ClimateSeries parsed =
        parse_csv(csv, columns, reference.station, 2001);
    REQUIRE(parsed.records.size() == reference.records.size());
    for (std::size_t i = 0; i < parsed.records.size(); ++i) {
        CHECK(parsed.records[i].ta == reference.records[i].ta);
        CHECK(parsed.records[i].isgh == reference.records[i].isgh);
        CHECK(parsed.records[i].isd == reference.records[i].isd);
        CHECK(parsed.records[i].ws == 0.0); // unmapped defaults
    }

    SUBCASE("unknown field names are rejected") {
        CHECK_THROWS_AS(parse_csv(csv, {{"isgh", 2}, {"isd", 3}, {"ta", 0}, {"bogus", 1}},
                                  reference.station, 2001),
                        ValidationError);
    }
    SUBCASE("required fields must be mapped") {
        CHECK_THROWS_AS(parse_csv(csv, {{"isgh", 2}, {"isd", 3}},
                                  reference.station, 2001),
                        ValidationError);
    }
    SUBCASE("column index out of range names the row") {
        CHECK_THROWS_WITH_AS(parse_csv(csv, {{"isgh", 2}, {"isd", 3}, {"ta", 7}},
                                       reference.station, 2001),
                             doctest::Contains("line 1"), ParseError);
    }
}

TEST_CASE("synthetic climate matches its analytic definition") {
    SyntheticProfile profile; // mean 10, annual 8, diurnal 4, peak 800, cloud 0.5
    const ClimateSeries series = generate_synthetic(profile);
    REQUIRE(series.records.size() == 8760);

    // Both cosines are sampled over whole periods, so they average out
    // and the annual mean equals the profile mean exactly.
    double sum = 0.0;
    for (const auto& rec : series.records) sum += rec.ta;
    CHECK(sum / 8760.0 == doctest::Approx(10.0).epsilon(1e-12));

    // Night hours are dark; solar noon hits the cloud-scaled peak.
    CHECK(series.records[3].isgh == 0.0);
    CHECK(series.records[23].isgh == 0.0);
    const double expected_noon = 800.0 * (1.0 - 0.75 * 0.5);
    CHECK(series.records[12].isgh == doctest::Approx(expected_noon).epsilon(1e-12));

    for (std::size_t i = 0; i < 48; ++i) {
        CHECK(series.records[i].isd == 0.5 * series.records[i].isgh);
        CHECK(series.records[i].isd <= series.records[i].isgh);
    }

    // More cloud means less annual irradiation.
    SyntheticProfile clearer = profile;
    clearer.cloud = 0.2;
    const ClimateSeries bright = generate_synthetic(clearer);
    double sum_cloudy = 0.0, sum_bright = 0.0;
    for (std::size_t i = 0; i < 8760; ++i) {
        sum_cloudy += series.records[i].isgh;
        sum_bright += bright.records[i].isgh;
    }
    CHECK(sum_bright > sum_cloudy);

    SUBCASE("bad profiles are rejected") {
        SyntheticProfile bad = profile;
        bad.cloud = 1.5;
        CHECK_THROWS_AS(generate_synthetic(bad), ValidationError);
        bad = profile;
        bad.annual_amplitude = -1.0;
        CHECK_THROWS_AS(generate_synthetic(bad), ValidationError);
    }
}

TEST_CASE("station sets load sorted by id with filenames in errors") {
    const auto dir = temp_dir("station_set");

    ClimateSeries a = small_synthetic();
    a.station.id = "ZZ99";
    ClimateSeries b = small_synthetic();
    b.station.id = "AA01";
    write_text(dir / "first.wac", write_wac(a));
    write_text(dir / "second.wac", write_wac(b));
    write_text(dir / "notes.txt", "not climate data");

    const auto series = load_station_set(dir);
    REQUIRE(series.size() == 2);
    CHECK(series[0].station.id == "AA01");
    CHECK(series[1].station.id == "ZZ99");

    SUBCASE("broken files name themselves") {
        write_text(dir / "broken.wac", "WACLIKE 1.0\nstation,X,-,0,0,0\n");
        CHECK_THROWS_WITH_AS(load_station_set(dir),
                             doctest::Contains("broken.wac"), ParseError);
    }
    SUBCASE("missing directory") {
        CHECK_THROWS_AS(load_station_set(dir / "nope"), IoError);
    }
    SUBCASE("empty directory gives an empty set") {
        const auto empty = temp_dir("station_set_empty");
        CHECK(load_station_set(empty).empty());
        std::filesystem::remove_all(empty);
    }

    std::filesystem::remove_all(dir);
}

TEST_CASE("writing an invalid series is refused") {
    ClimateSeries series = small_synthetic();
    series.records[1234].hrel = 250.0;
    CHECK_THROWS_AS(write_wac(series), ValidationError);
    series = small_synthetic();
    series.records.pop_back();
    CHECK_THROWS_AS(write_wac(series), ValidationError);
}
