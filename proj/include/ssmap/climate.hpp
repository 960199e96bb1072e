#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ssmap {

// Geographic metadata of one weather station.
struct Station {
    std::string id;
    std::string name;
    double latitude = 0.0;   // degrees, [-90, 90]
    double longitude = 0.0;  // degrees, [-180, 180]
    double elevation = 0.0;  // meters
};

// One hour of weather. Nine columns, fixed order everywhere.
struct ClimateRecord {
    double isgh = 0.0;  // horizontal global solar radiation [W/m2], >= 0
    double isd = 0.0;   // diffuse solar radiation [W/m2], >= 0, <= isgh + 1
    double ci = 0.0;    // cloud cover [0..1]
    double ta = 0.0;    // air temperature [degC]
    double hrel = 0.0;  // relative humidity [%], [0..100]
    double ws = 0.0;    // wind speed [m/s], >= 0
    double wd = 0.0;    // wind direction [deg], [0..360)
    double rn = 0.0;    // rain intensity [mm/h], >= 0
    double ilah = 0.0;  // long wave radiation [W/m2]
};

// One station-year of contiguous hourly records.
// Timestamps are local standard time; record 0 is Jan 1, 00:00-01:00.
struct ClimateSeries {
    Station station;
    int start_year = 0;
    std::vector<ClimateRecord> records;  // 8760, or 8784 in leap years
};

// Analytic test climate. The generated year is deterministic:
//   ta   = mean + annual cosine (minimum mid-January)
//              + diurnal cosine (maximum at 14:00)
//   isgh = half-sine between 06:00 and 18:00, peak at solar noon,
//          scaled by (1 - 0.75 * cloud)
//   isd  = cloud * isgh
// Latitude is carried into the station metadata only; the solar day is a
// fixed 12-hour window with no solar-geometry computation.
struct SyntheticProfile {
    double mean_ta = 10.0;           // degC
    double annual_amplitude = 8.0;   // K, >= 0
    double diurnal_amplitude = 4.0;  // K, >= 0
    double peak_irradiance = 800.0;  // W/m2 clear-sky peak, >= 0
    double cloud = 0.5;              // [0..1]
    double latitude = 52.0;          // degrees
};

// One detected-and-handled problem from validate_series.
struct SeriesIssue {
    std::string field;
    std::size_t first_hour = 0;  // 0-based index of the first affected record
    std::size_t length = 0;      // run length in hours
    std::string message;
};

bool is_leap_year(int year);

// Throw ValidationError when an invariant does not hold.
void validate_station(const Station& station);
void validate_record(const ClimateRecord& record, std::size_t hour);
void validate_series_strict(const ClimateSeries& series);

// WAC-like text format (UTF-8, '\n' or '\r\n' line ends):
//   line 1: WACLIKE 1.0
//   line 2: station,<id>,<name>,<lat>,<lon>,<elev>   ('-' marks an empty name)
//   line 3: year,<start_year>
//   line 4: isgh,isd,ci,ta,hrel,ws,wd,rn,ilah
//   then one comma-separated row per hour, decimal point '.'.
// parse_wac validates every row; errors carry 1-based line numbers.
ClimateSeries parse_wac(std::string_view text);

// Structural parse only: row counts and the header are enforced but field
// values are not range-checked, and unparseable or empty fields become NaN.
// Pair with validate_series to repair short gaps.
ClimateSeries parse_wac_lenient(std::string_view text);

// Inverse of parse_wac. Numbers are written in shortest round-trip form, so
// parse_wac(write_wac(s)) reproduces s bit for bit.
std::string write_wac(const ClimateSeries& series);

// Plain CSV import. `columns` maps field names (isgh, isd, ...) to 0-based
// column indices and must cover at least isgh, isd and ta; unmapped fields
// default to 0. Station metadata and year come from the caller.
ClimateSeries parse_csv(std::string_view text,
                        const std::map<std::string, int>& columns,
                        const Station& station, int start_year);

// Deterministic synthetic year (8760 h) for the given profile.
ClimateSeries generate_synthetic(const SyntheticProfile& profile,
                                 const Station& station, int start_year = 2001);
ClimateSeries generate_synthetic(const SyntheticProfile& profile);

// Range-checks every record. With gap_fill, runs of at most 3 consecutive
// invalid or missing values per field are repaired (linear interpolation
// between valid neighbours; nearest-value fill at the series boundary) and
// reported; longer runs throw. Without gap_fill any violation throws.
std::pair<ClimateSeries, std::vector<SeriesIssue>>
validate_series(ClimateSeries series, bool gap_fill);

// Parses and validates every *.wac file in a directory, sorted by station id
// (ties broken by file name). The first failing file aborts with its name in
// the message. An empty directory yields an empty list.
std::vector<ClimateSeries> load_station_set(const std::filesystem::path& directory);

// Shortest-round-trip decimal formatting used by every text writer.
std::string fmt_double(double value);

} // namespace ssmap
