#include "ssmap/climate.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "ssmap/errors.hpp"

namespace ssmap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct FieldSpec {
    const char* name;
    double ClimateRecord::*member;
    double lo;
    double hi;
    bool hi_exclusive;
};

// Column order of the climate format. wd is the only half-open range.
constexpr std::array<FieldSpec, 9> kFields = {{
    {"isgh", &ClimateRecord::isgh, 0.0, kInf, false},
    {"isd", &ClimateRecord::isd, 0.0, kInf, false},
    {"ci", &ClimateRecord::ci, 0.0, 1.0, false},
    {"ta", &ClimateRecord::ta, -kInf, kInf, false},
    {"hrel", &ClimateRecord::hrel, 0.0, 100.0, false},
    {"ws", &ClimateRecord::ws, 0.0, kInf, false},
    {"wd", &ClimateRecord::wd, 0.0, 360.0, true},
    {"rn", &ClimateRecord::rn, 0.0, kInf, false},
    {"ilah", &ClimateRecord::ilah, -kInf, kInf, false},
}};

constexpr std::size_t kIsdIndex = 1;
constexpr const char* kFormatTag = "WACLIKE 1.0";
constexpr const char* kColumnHeader = "isgh,isd,ci,ta,hrel,ws,wd,rn,ilah";

// Diffuse radiation may exceed global by at most this much (rounding slack).
constexpr double kIsdSlack = 1.0;

bool field_in_range(const FieldSpec& spec, double v) {
    if (!std::isfinite(v)) return false;
    if (v < spec.lo) return false;
    if (spec.hi_exclusive ? v >= spec.hi : v > spec.hi) return false;
    return true;
}

bool field_valid(const ClimateRecord& r, std::size_t f) {
    const double v = r.*kFields[f].member;
    if (!field_in_range(kFields[f], v)) return false;
    if (f == kIsdIndex && std::isfinite(r.isgh) && v > r.isgh + kIsdSlack) return false;
    return true;
}

// Empty string when the record is fully valid, otherwise a description of
// the first violated field.
std::string record_violation(const ClimateRecord& r) {
    for (std::size_t f = 0; f < kFields.size(); ++f) {
        if (!field_valid(r, f)) {
            const double v = r.*kFields[f].member;
            std::string msg = std::string(kFields[f].name) + " = " + fmt_double(v);
            if (f == kIsdIndex && std::isfinite(v) && std::isfinite(r.isgh) &&
                v > r.isgh + kIsdSlack) {
                msg += " exceeds isgh + 1";
            } else {
                msg += " out of range";
            }
            return msg;
        }
    }
    return {};
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

bool try_parse_double(std::string_view tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

double parse_double_or_throw(std::string_view tok, long line, const char* what) {
    double v = 0.0;
    if (tok.empty() || !try_parse_double(tok, v))
        throw ParseError(std::string("non-numeric ") + what + " '" + std::string(tok) + "'",
                         line);
    return v;
}

long parse_int_or_throw(std::string_view tok, long line, const char* what) {
    long v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw ParseError(std::string("non-numeric ") + what + " '" + std::string(tok) + "'",
                         line);
    return v;
}

void check_row_count(std::size_t rows, int start_year, long header_lines) {
    if (rows != 8760 && rows != 8784)
        throw ParseError("row count mismatch: expected 8760 (or 8784 for leap years), got " +
                             std::to_string(rows),
                         header_lines + static_cast<long>(rows) + 1);
    if (rows == 8784 && !is_leap_year(start_year))
        throw ParseError("8784 rows require a leap start year, got " +
                         std::to_string(start_year));
}

ClimateSeries parse_wac_impl(std::string_view text, bool strict) {
    const auto lines = split_lines(text);
    if (lines.size() < 4) throw ParseError("truncated file: missing header lines", 1);

    if (lines[0] != kFormatTag)
        throw ParseError("unsupported format header '" + std::string(lines[0]) + "'", 1);

    const auto meta = split_fields(lines[1]);
    if (meta.size() != 6 || meta[0] != "station")
        throw ParseError("malformed station line, expected "
                         "'station,<id>,<name>,<lat>,<lon>,<elev>'",
                         2);

    ClimateSeries series;
    series.station.id = std::string(meta[1]);
    series.station.name = meta[2] == "-" ? std::string() : std::string(meta[2]);
    series.station.latitude = parse_double_or_throw(meta[3], 2, "latitude");
    series.station.longitude = parse_double_or_throw(meta[4], 2, "longitude");
    series.station.elevation = parse_double_or_throw(meta[5], 2, "elevation");

    const auto year_line = split_fields(lines[2]);
    if (year_line.size() != 2 || year_line[0] != "year")
        throw ParseError("malformed year line, expected 'year,<start_year>'", 3);
    series.start_year = static_cast<int>(parse_int_or_throw(year_line[1], 3, "year"));

    if (lines[3] != kColumnHeader)
        throw ParseError("column header must be '" + std::string(kColumnHeader) + "'", 4);

    validate_station(series.station);

    series.records.reserve(lines.size() - 4);
    for (std::size_t i = 4; i < lines.size(); ++i) {
        const long line_no = static_cast<long>(i) + 1;
        const auto toks = split_fields(lines[i]);
        if (toks.size() != kFields.size())
            throw ParseError("expected 9 columns, got " + std::to_string(toks.size()),
                             line_no);
        ClimateRecord rec;
        for (std::size_t f = 0; f < kFields.size(); ++f) {
            double v = kNaN;
            if (strict) {
                v = parse_double_or_throw(toks[f], line_no, kFields[f].name);
            } else if (!toks[f].empty()) {
                if (!try_parse_double(toks[f], v)) v = kNaN;
            }
            rec.*kFields[f].member = v;
        }
        if (strict) {
            const std::string violation = record_violation(rec);
            if (!violation.empty()) throw ParseError(violation, line_no);
        }
        series.records.push_back(rec);
    }

    check_row_count(series.records.size(), series.start_year, 4);
    return series;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw ParseError(path.string() + ": read failure");
    return std::move(buf).str();
}

} // namespace

std::string fmt_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

void validate_station(const Station& station) {
    if (station.id.empty()) throw ValidationError("station id must be non-empty");
    for (const std::string* s : {&station.id, &station.name}) {
        if (s->find(',') != std::string::npos || s->find('\n') != std::string::npos ||
            s->find('\r') != std::string::npos)
            throw ValidationError("station id/name must not contain commas or line breaks");
    }
    if (station.name == "-")
        throw ValidationError("station name '-' is reserved for the empty-name marker");
    if (!std::isfinite(station.latitude) || station.latitude < -90.0 ||
        station.latitude > 90.0)
        throw ValidationError("station latitude out of [-90, 90]");
    if (!std::isfinite(station.longitude) || station.longitude < -180.0 ||
        station.longitude > 180.0)
        throw ValidationError("station longitude out of [-180, 180]");
    if (!std::isfinite(station.elevation))
        throw ValidationError("station elevation must be finite");
}

void validate_record(const ClimateRecord& record, std::size_t hour) {
    const std::string violation = record_violation(record);
    if (!violation.empty())
        throw ValidationError("hour " + std::to_string(hour) + ": " + violation);
}

void validate_series_strict(const ClimateSeries& series) {
    validate_station(series.station);
    if (series.records.size() != 8760 && series.records.size() != 8784)
        throw ValidationError("series length must be 8760 or 8784, got " +
                              std::to_string(series.records.size()));
    if (series.records.size() == 8784 && !is_leap_year(series.start_year))
        throw ValidationError("8784 records require a leap start year");
    for (std::size_t i = 0; i < series.records.size(); ++i)
        validate_record(series.records[i], i);
}

ClimateSeries parse_wac(std::string_view text) { return parse_wac_impl(text, true); }

ClimateSeries parse_wac_lenient(std::string_view text) {
    return parse_wac_impl(text, false);
}

std::string write_wac(const ClimateSeries& series) {
    validate_series_strict(series);

    std::string out;
    out.reserve(series.records.size() * 64 + 128);
    out += kFormatTag;
    out += '\n';
    out += "station,";
    out += series.station.id;
    out += ',';
    out += series.station.name.empty() ? "-" : series.station.name;
    out += ',';
    out += fmt_double(series.station.latitude);
    out += ',';
    out += fmt_double(series.station.longitude);
    out += ',';
    out += fmt_double(series.station.elevation);
    out += '\n';
    out += "year,";
    out += std::to_string(series.start_year);
    out += '\n';
    out += kColumnHeader;
    out += '\n';

    for (const auto& rec : series.records) {
        for (std::size_t f = 0; f < kFields.size(); ++f) {
            if (f > 0) out += ',';
            out += fmt_double(rec.*kFields[f].member);
        }
        out += '\n';
    }
    return out;
}

ClimateSeries parse_csv(std::string_view text,
                        const std::map<std::string, int>& columns,
                        const Station& station, int start_year) {
    for (const auto& [name, col] : columns) {
        const bool known = std::any_of(kFields.begin(), kFields.end(),
                                       [&](const FieldSpec& f) { return name == f.name; });
        if (!known) throw ValidationError("unknown field name '" + name + "' in column map");
        if (col < 0) throw ValidationError("negative column index for field '" + name + "'");
    }
    for (const char* required : {"isgh", "isd", "ta"}) {
        if (!columns.contains(required))
            throw ValidationError(std::string("column map must cover field '") + required +
                                  "'");
    }

    validate_station(station);

    ClimateSeries series;
    series.station = station;
    series.start_year = start_year;

    const auto lines = split_lines(text);
    series.records.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const long line_no = static_cast<long>(i) + 1;
        const auto toks = split_fields(lines[i]);
        ClimateRecord rec;
        for (const auto& [name, col] : columns) {
            if (static_cast<std::size_t>(col) >= toks.size())
                throw ParseError("column " + std::to_string(col) + " for field '" + name +
                                     "' out of range; row has " + std::to_string(toks.size()) +
                                     " columns",
                                 line_no);
            const auto it = std::find_if(kFields.begin(), kFields.end(),
                                         [&](const FieldSpec& f) { return name == f.name; });
            rec.*(it->member) =
                parse_double_or_throw(toks[static_cast<std::size_t>(col)], line_no,
                                      it->name);
        }
        const std::string violation = record_violation(rec);
        if (!violation.empty()) throw ParseError(violation, line_no);
        series.records.push_back(rec);
    }

    check_row_count(series.records.size(), series.start_year, 0);
    return series;
}

ClimateSeries generate_synthetic(const SyntheticProfile& profile,
                                 const Station& station, int start_year) {
    if (!std::isfinite(profile.mean_ta))
        throw ValidationError("synthetic profile: mean_ta must be finite");
    if (!(profile.annual_amplitude >= 0.0) || !std::isfinite(profile.annual_amplitude))
        throw ValidationError("synthetic profile: annual amplitude must be >= 0");
    if (!(profile.diurnal_amplitude >= 0.0) || !std::isfinite(profile.diurnal_amplitude))
        throw ValidationError("synthetic profile: diurnal amplitude must be >= 0");
    if (!(profile.peak_irradiance >= 0.0) || !std::isfinite(profile.peak_irradiance))
        throw ValidationError("synthetic profile: peak irradiance must be >= 0");
    if (!(profile.cloud >= 0.0 && profile.cloud <= 1.0))
        throw ValidationError("synthetic profile: cloud fraction must be in [0, 1]");
    if (!(profile.latitude >= -90.0 && profile.latitude <= 90.0))
        throw ValidationError("synthetic profile: latitude out of [-90, 90]");

    validate_station(station);

    constexpr std::size_t kHours = 8760;
    constexpr double kPi = std::numbers::pi;
    // Coldest day mid-January (day-of-year 14), warmest hour 14:00.
    constexpr double kColdestDay = 14.0;
    constexpr double kWarmestHour = 14.0;
    constexpr int kSunrise = 6;
    constexpr int kSunset = 18;

    ClimateSeries series;
    series.station = station;
    series.start_year = start_year;
    series.records.resize(kHours);

    const double sky_scale = 1.0 - 0.75 * profile.cloud;
    for (std::size_t h = 0; h < kHours; ++h) {
        const double day = static_cast<double>(h) / 24.0;
        const int hod = static_cast<int>(h % 24);

        ClimateRecord& rec = series.records[h];
        rec.ta = profile.mean_ta -
                 profile.annual_amplitude *
                     std::cos(2.0 * kPi * (day - kColdestDay) / 365.0) +
                 profile.diurnal_amplitude *
                     std::cos(2.0 * kPi * (hod - kWarmestHour) / 24.0);

        double isgh = 0.0;
        if (hod >= kSunrise && hod <= kSunset) {
            const double shape =
                std::sin(kPi * (hod - kSunrise) / double(kSunset - kSunrise));
            isgh = std::max(0.0, profile.peak_irradiance * shape * sky_scale);
        }
        rec.isgh = isgh;
        rec.isd = profile.cloud * isgh;
        rec.ci = profile.cloud;
        rec.hrel = 50.0;
        rec.ws = 1.0;
        rec.wd = 180.0;
        rec.rn = 0.0;
        rec.ilah = 300.0;
    }

    validate_series_strict(series);
    return series;
}

ClimateSeries generate_synthetic(const SyntheticProfile& profile) {
    Station station;
    station.id = "synthetic";
    station.name = "Synthetic";
    station.latitude = profile.latitude;
    return generate_synthetic(profile, station);
}

std::pair<ClimateSeries, std::vector<SeriesIssue>>
validate_series(ClimateSeries series, bool gap_fill) {
    validate_station(series.station);
    if (series.records.size() != 8760 && series.records.size() != 8784)
        throw ValidationError("series length must be 8760 or 8784, got " +
                              std::to_string(series.records.size()));

    std::vector<SeriesIssue> issues;
    if (!gap_fill) {
        for (std::size_t i = 0; i < series.records.size(); ++i)
            validate_record(series.records[i], i);
        return {std::move(series), std::move(issues)};
    }

    constexpr std::size_t kMaxGap = 3;
    const std::size_t n = series.records.size();
    std::vector<char> valid(n);

    for (std::size_t f = 0; f < kFields.size(); ++f) {
        for (std::size_t i = 0; i < n; ++i)
            valid[i] = field_valid(series.records[i], f) ? 1 : 0;

        std::size_t i = 0;
        while (i < n) {
            if (valid[i]) {
                ++i;
                continue;
            }
            std::size_t run_end = i;
            while (run_end < n && !valid[run_end]) ++run_end;
            const std::size_t len = run_end - i;
            if (len > kMaxGap)
                throw ValidationError("field " + std::string(kFields[f].name) + ": gap of " +
                                      std::to_string(len) + " h at hour " +
                                      std::to_string(i) + " exceeds the " +
                                      std::to_string(kMaxGap) + " h fill limit");

            const bool has_left = i > 0;
            const bool has_right = run_end < n;
            auto member = kFields[f].member;
            if (has_left && has_right) {
                const double a = series.records[i - 1].*member;
                const double b = series.records[run_end].*member;
                for (std::size_t k = 0; k < len; ++k) {
                    series.records[i + k].*member =
                        a + (b - a) * static_cast<double>(k + 1) /
                                static_cast<double>(len + 1);
                }
            } else {
                // Series boundary: no second anchor, hold the nearest value.
                const double v = has_left ? series.records[i - 1].*member
                                          : series.records[run_end].*member;
                for (std::size_t k = 0; k < len; ++k) series.records[i + k].*member = v;
            }
            issues.push_back({kFields[f].name, i, len,
                              has_left && has_right ? "filled by linear interpolation"
                                                    : "filled from nearest valid value"});
            i = run_end;
        }
    }

    // Everything the fill produced must satisfy the full record invariants,
    // including the isd/isgh cross check.
    for (std::size_t i = 0; i < n; ++i) validate_record(series.records[i], i);
    return {std::move(series), std::move(issues)};
}

std::vector<ClimateSeries> load_station_set(const std::filesystem::path& directory) {
    std::error_code ec;
    if (!std::filesystem::is_directory(directory, ec))
        throw IoError("not a directory: " + directory.string());

    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".wac")
            paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());

    std::vector<ClimateSeries> out;
    out.reserve(paths.size());
    for (const auto& path : paths) {
        try {
            out.push_back(parse_wac(read_file(path)));
        } catch (const ParseError& e) {
            throw ParseError(path.filename().string() + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ParseError(path.filename().string() + ": " + e.what());
        }
    }

    std::stable_sort(out.begin(), out.end(),
                     [](const ClimateSeries& a, const ClimateSeries& b) {
                         return a.station.id < b.station.id;
                     });
    return out;
}

} // namespace ssmap
