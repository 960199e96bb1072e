#include "ssmap/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "ssmap/errors.hpp"
#include "ssmap/indicators.hpp"

namespace ssmap {

namespace {

template <typename Fn>
int run_guarded(CommandIO& io, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        io.err << "error E_CONFIG: " << e.what() << '\n';
        return kConfigError;
    } catch (const ParseError& e) {
        io.err << "error E_PARSE: " << e.what() << '\n';
        return kParseError;
    } catch (const ValidationError& e) {
        io.err << "error E_VALIDATE: " << e.what() << '\n';
        return kValidateError;
    } catch (const IoError& e) {
        io.err << "error E_IO: " << e.what() << '\n';
        return kIoError;
    } catch (const std::filesystem::filesystem_error& e) {
        io.err << "error E_IO: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        io.err << "error E_INTERNAL: " << e.what() << '\n';
        return kInternalError;
    }
}

// Runs fn(0..n-1) on the requested worker count (0 = hardware).
// Work items must be independent; the first exception wins.
void parallel_for_index(std::size_t n, int workers,
                        const std::function<void(std::size_t)>& fn) {
    if (workers <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        workers = hw == 0 ? 1 : static_cast<int>(hw);
    }
    const std::size_t thread_count =
        std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    if (thread_count <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (std::size_t t = 0; t < thread_count; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on " + path.string());
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + path.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write failure on " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string());
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    // 53-bit mantissa draw; identical across platforms, unlike
    // std::uniform_real_distribution.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

// Climate character as a smooth function of latitude, with a little
// seeded jitter so stations at the same latitude differ.
SyntheticProfile profile_for(double lat, std::mt19937_64& rng) {
    SyntheticProfile p;
    p.latitude = lat;
    p.mean_ta = 18.0 - 0.3 * (lat - 35.0) + uniform(rng, -1.0, 1.0);
    p.annual_amplitude = 6.0 + 4.0 * (lat - 35.0) / 36.0 + uniform(rng, -0.5, 0.5);
    p.diurnal_amplitude = 4.0 + uniform(rng, -0.5, 0.5);
    // Southern stations: stronger sun, clearer skies. Both factors fall
    // strictly with latitude, so annual irradiation does as well.
    p.peak_irradiance = 1050.0 - 10.0 * (lat - 35.0);
    p.cloud = std::clamp(0.3 + 0.3 * (lat - 35.0) / 35.0, 0.0, 1.0);
    return p;
}

std::string station_id(std::size_t index, std::size_t count) {
    std::size_t width = 3;
    for (std::size_t c = count; c > 999; c /= 10) ++width;
    std::string digits = std::to_string(index + 1);
    return "S" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

std::filesystem::path map_input_path(const RunConfig& config) {
    if (config.map_input_csv) return *config.map_input_csv;
    return config.output_dir / "summary.csv";
}

} // namespace

int cmd_synth(const RunConfig& config, CommandIO& io) {
    return run_guarded(io, [&]() -> int {
        const SynthConfig& s = config.synth;
        ensure_dir(config.climate_dir);

        std::mt19937_64 rng(s.seed);
        std::vector<StationIndicator> index;
        index.reserve(s.count);
        for (std::size_t i = 0; i < s.count; ++i) {
            const double frac =
                s.count == 1 ? 0.5
                             : static_cast<double>(i) /
                                   static_cast<double>(s.count - 1);
            const double lat = s.lat_min + frac * (s.lat_max - s.lat_min);
            const double lon = uniform(rng, s.lon_min, s.lon_max);
            const double elev = std::floor(uniform(rng, 0.0, 500.0));
            const SyntheticProfile profile = profile_for(lat, rng);

            Station station;
            station.id = station_id(i, s.count);
            station.name = "Synthetic " + std::to_string(i + 1);
            station.latitude = lat;
            station.longitude = lon;
            station.elevation = elev;

            const ClimateSeries series = generate_synthetic(profile, station);
            write_file(config.climate_dir / (station.id + ".wac"),
                       write_wac(series));

            StationIndicator ind;
            ind.station = station;
            ind.values["elev_m"] = elev;
            index.push_back(std::move(ind));
        }

        write_file(config.climate_dir / "stations.csv", write_station_csv(index));
        io.out << "wrote " << s.count << " station files to "
               << config.climate_dir.string() << '\n';
        return kOk;
    });
}

int cmd_validate(const RunConfig& config, CommandIO& io) {
    return run_guarded(io, [&]() -> int {
        std::error_code ec;
        if (!std::filesystem::is_directory(config.climate_dir, ec))
            throw IoError("not a directory: " + config.climate_dir.string());

        std::vector<std::filesystem::path> paths;
        for (const auto& entry :
             std::filesystem::directory_iterator(config.climate_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".wac")
                paths.push_back(entry.path());
        }
        std::sort(paths.begin(), paths.end());

        std::size_t failed = 0;
        for (const auto& path : paths) {
            const std::string name = path.filename().string();
            try {
                const ClimateSeries raw = parse_wac_lenient(read_file(path));
                const auto [series, issues] = validate_series(raw, true);
                (void)series;
                if (issues.empty()) {
                    io.out << name << ": OK\n";
                } else {
                    io.out << name << ": OK (" << issues.size() << " gaps filled)\n";
                    for (const auto& issue : issues)
                        io.out << "  " << issue.field << ": " << issue.length
                               << " h gap at hour " << issue.first_hour << ", "
                               << issue.message << '\n';
                }
            } catch (const std::exception& e) {
                ++failed;
                io.out << name << ": FAIL " << e.what() << '\n';
            }
        }

        io.out << "validated " << paths.size() << " files, "
               << (paths.size() - failed) << " ok\n";
        if (paths.empty())
            throw ValidationError("no .wac files in " + config.climate_dir.string());
        if (failed > 0)
            throw ValidationError(std::to_string(failed) + " of " +
                                  std::to_string(paths.size()) +
                                  " climate files failed validation");
        return kOk;
    });
}

int cmd_simulate(const RunConfig& config, CommandIO& io) {
    return run_guarded(io, [&]() -> int {
        const std::vector<ClimateSeries> stations =
            load_station_set(config.climate_dir);
        if (stations.empty())
            throw ValidationError("no .wac files in " + config.climate_dir.string());
        ensure_dir(config.output_dir);

        const CollectorParams params = derive_capacities(config.collector);
        std::vector<PerformanceResult> results(stations.size());
        parallel_for_index(stations.size(), config.workers, [&](std::size_t i) {
            results[i] = evaluate(params, stations[i], config.threshold);
        });

        std::vector<StationIndicator> summary;
        summary.reserve(stations.size());
        for (std::size_t i = 0; i < stations.size(); ++i) {
            const Station& st = stations[i].station;
            std::string csv = "hour,pout_w_m2,p50_w_m2\n";
            csv.reserve(results[i].pout.size() * 32 + 32);
            for (std::size_t hh = 0; hh < results[i].pout.size(); ++hh) {
                csv += std::to_string(hh);
                csv += ',';
                csv += fmt_double(results[i].pout[hh]);
                csv += ',';
                csv += fmt_double(results[i].p50[hh]);
                csv += '\n';
            }
            write_file(config.output_dir / (st.id + "_performance.csv"), csv);

            StationIndicator ind;
            ind.station = st;
            ind.values["pf_p"] = results[i].pf_p;
            ind.values["pf_t"] = results[i].pf_t;
            summary.push_back(std::move(ind));
        }

        write_file(config.output_dir / "summary.csv",
                   write_station_csv(collect(std::move(summary))));
        io.out << "simulated " << stations.size() << " stations into "
               << config.output_dir.string() << '\n';
        return kOk;
    });
}

int cmd_sweep(const RunConfig& config, CommandIO& io) {
    return run_guarded(io, [&]() -> int {
        const std::vector<ClimateSeries> stations =
            load_station_set(config.climate_dir);
        if (stations.empty())
            throw ValidationError("no .wac files in " + config.climate_dir.string());
        ensure_dir(config.output_dir);

        std::vector<SweepResult> results(stations.size());
        parallel_for_index(stations.size(), config.workers, [&](std::size_t i) {
            results[i] = run_sweep(config.collector, config.sweep_grid,
                                   stations[i], config.threshold,
                                   config.rederive_capacities);
        });

        std::vector<StationIndicator> best;
        best.reserve(stations.size());
        for (std::size_t i = 0; i < stations.size(); ++i) {
            const Station& st = stations[i].station;
            write_file(config.output_dir / (st.id + "_tables.txt"),
                       format_tables(results[i]));

            const BestConfig bc = best_config(results[i]);
            StationIndicator ind;
            ind.station = st;
            ind.values["best_d1_mm"] = bc.d1 * 1000.0;
            ind.values["best_mdot_kg_min"] = bc.mdot * 60.0;
            ind.values["pf_p"] = bc.pf_p;
            ind.values["pf_t"] = bc.pf_t;
            best.push_back(std::move(ind));
        }

        write_file(config.output_dir / "best_configs.csv",
                   write_station_csv(collect(std::move(best))));
        io.out << "swept " << stations.size() << " stations ("
               << config.sweep_grid.mdot_values.size() *
                      config.sweep_grid.d1_values.size()
               << " cells each) into " << config.output_dir.string() << '\n';
        return kOk;
    });
}

int cmd_map(const RunConfig& config, const std::string& field, CommandIO& io) {
    return run_guarded(io, [&]() -> int {
        if (field.empty()) throw ValidationError("map field name must be non-empty");

        const std::filesystem::path input = map_input_path(config);
        const std::vector<StationIndicator> indicators =
            collect(read_station_csv(read_file(input)));

        bool known = false;
        std::set<std::string> available;
        for (const auto& ind : indicators)
            for (const auto& [name, value] : ind.values) {
                available.insert(name);
                if (name == field) known = true;
            }
        if (!known) {
            std::string names;
            for (const auto& n : available) names += (names.empty() ? "" : ", ") + n;
            throw ValidationError("unknown field '" + field + "' (available: " +
                                  names + ")");
        }

        const RasterGrid grid = idw_interpolate(indicators, field, config.map_grid,
                                                config.idw_power,
                                                config.idw_cutoff_deg);

        ensure_dir(config.output_dir);
        write_file(config.output_dir / "map_stations.csv",
                   write_station_csv(indicators));
        write_file(config.output_dir / "map_stations.geojson",
                   write_geojson(indicators));
        write_file(config.output_dir / (field + ".asc"), write_ascii_grid(grid));
        const std::vector<std::uint8_t> ppm =
            write_ppm(grid, Colormap::cold_to_warm());
        write_file(config.output_dir / (field + ".ppm"),
                   std::string_view(reinterpret_cast<const char*>(ppm.data()),
                                    ppm.size()));

        io.out << "mapped field " << field << " (" << grid.spec.rows() << "x"
               << grid.spec.cols() << " grid, " << indicators.size()
               << " stations) into " << config.output_dir.string() << '\n';
        return kOk;
    });
}

} // namespace ssmap
