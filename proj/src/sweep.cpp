#include "rtasim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "rtasim/engine.hpp"
#include "rtasim/random.hpp"

namespace rtasim {

namespace {

constexpr const char* kDemoStations = "5,10,20,30";
constexpr SlotIndex kDemoSlots = 1'000'000;
constexpr int kDemoReps = 2;
constexpr SlotIndex kDefaultSlots = 40'000'000;
constexpr int kDefaultReps = 10;

template <typename T>
T parse_number(const std::string& token)
{
    T value{};
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || token.empty()) {
        throw UsageError("malformed number '" + token + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) {
        parts.push_back(item);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

std::string fixed_shortest(double v)
{
    char buf[400];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    if (ec != std::errc{}) {
        return "NA";
    }
    return {buf, ptr};
}

std::string fixed_digits(double v, int digits)
{
    char buf[400];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    if (ec != std::errc{}) {
        return "NA";
    }
    return {buf, ptr};
}

unsigned worker_count(const SweepSpec& spec, std::size_t tasks)
{
    unsigned n = spec.jobs != 0 ? spec.jobs : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv(kMaxWorkersEnv)) {
        unsigned cap = 0;
        const std::string s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
        if (ec == std::errc{} && ptr == s.data() + s.size() && cap > 0) {
            n = std::min(n, cap);
        }
    }
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, tasks)));
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> values;
    for (const auto& item : split(text, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            values.push_back(parse_number<int>(parts[0]));
            continue;
        }
        if (parts.size() > 3) {
            throw UsageError("malformed range '" + item + "'");
        }
        const int lo = parse_number<int>(parts[0]);
        const int hi = parse_number<int>(parts[1]);
        const int step = parts.size() == 3 ? parse_number<int>(parts[2]) : 1;
        if (step <= 0 || hi < lo) {
            throw UsageError("malformed range '" + item + "'");
        }
        for (long long v = lo; v <= hi; v += step) {
            values.push_back(static_cast<int>(v));
        }
    }
    if (values.empty()) {
        throw UsageError("empty list");
    }
    return values;
}

std::vector<double> parse_double_list(const std::string& text)
{
    std::vector<double> values;
    for (const auto& item : split(text, ',')) {
        values.push_back(parse_number<double>(item));
    }
    if (values.empty()) {
        throw UsageError("empty list");
    }
    return values;
}

SweepSpec parse_args(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return parse_args(args);
}

SweepSpec parse_args(std::span<const std::string> args)
{
    CLI::App app{"Slotted uplink OFDMA simulator: UORA vs cyclic resource assignment"};
    app.option_defaults()->always_capture_default();

    std::vector<std::string> algorithms;
    std::string stations;
    std::string f_values = "6";
    std::string lambdas = "200";
    double slot_us = 250.0;
    int fmax = 18;
    double deadline_us = 1000.0;
    SlotIndex slots = 0;
    SlotIndex warmup = -1;
    std::uint64_t seed = 1;
    int reps = 0;
    std::string out;
    int eocw_min = 3;
    int eocw_max = 5;
    unsigned jobs = 0;

    app.add_option("--algorithm", algorithms, "uora or cra; repeatable (default: both)")
        ->check(CLI::IsMember({"uora", "cra"}))
        ->delimiter(',');
    app.add_option("--stations", stations, "station counts: list and/or a:b[:step] ranges");
    app.add_option("--f", f_values, "RA RUs per slot: list and/or ranges");
    app.add_option("--lambda", lambdas, "frame generation rate, 1/s (list allowed)");
    app.add_option("--slot-us", slot_us, "slot duration, microseconds");
    app.add_option("--fmax", fmax, "RUs per slot");
    app.add_option("--deadline-us", deadline_us, "delay deadline, microseconds");
    app.add_option("--slots", slots, "simulated slots per replication (default 4e7)");
    app.add_option("--warmup", warmup, "warm-up slots excluded from metrics (default slots/100)");
    app.add_option("--seed", seed, "base seed");
    app.add_option("--reps", reps, "replications per point (default 10)");
    app.add_option("--out", out, "output CSV path (default stdout)");
    app.add_option("--eocw-min", eocw_min, "UORA OCW_MIN exponent, OCW = 2^e - 1");
    app.add_option("--eocw-max", eocw_max, "UORA OCW_MAX exponent");
    app.add_option("--jobs", jobs, "worker threads (default: all cores)");

    std::vector<const char*> argv{"rtasim"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const bool demo = args.empty();
    SweepSpec spec;
    spec.jobs = jobs;
    if (!out.empty()) {
        spec.output_path = out;
    }
    if (algorithms.empty()) {
        spec.algorithms = {Algorithm::Uora, Algorithm::Cra};
    } else {
        for (const auto& a : algorithms) {
            const auto alg = *parse_algorithm(a);
            if (std::find(spec.algorithms.begin(), spec.algorithms.end(), alg) ==
                spec.algorithms.end()) {
                spec.algorithms.push_back(alg);
            }
        }
    }
    spec.stations = parse_int_list(stations.empty() ? kDemoStations : stations);
    spec.f_values = parse_int_list(f_values);
    spec.lambdas = parse_double_list(lambdas);
    spec.replications = reps != 0 ? reps : (demo ? kDemoReps : kDefaultReps);
    if (spec.replications < 1) {
        throw UsageError("--reps must be ≥ 1");
    }

    SimConfig& base = spec.base;
    base.slot_duration = slot_us * 1e-6;
    base.f_max = fmax;
    base.deadline = deadline_us * 1e-6;
    base.horizon_slots = slots != 0 ? slots : (demo ? kDemoSlots : kDefaultSlots);
    base.warmup_slots = warmup >= 0 ? warmup : base.horizon_slots / 100;
    base.seed = seed;
    try {
        base.ocw_min = ocw_from_exponent(eocw_min);
        base.ocw_max = ocw_from_exponent(eocw_max);
        for (const auto& point : sweep_points(spec)) {
            validate_config(replication_config(spec, point, 0));
        }
    } catch (const ConfigError& e) {
        throw UsageError(std::string("invalid configuration: ") + e.what());
    }
    return spec;
}

std::vector<SweepPoint> sweep_points(const SweepSpec& spec)
{
    std::vector<SweepPoint> points;
    for (auto alg : spec.algorithms) {
        for (int f : spec.f_values) {
            for (int n : spec.stations) {
                for (double lambda : spec.lambdas) {
                    points.push_back({alg, f, n, lambda});
                }
            }
        }
    }
    std::stable_sort(points.begin(), points.end(), [](const SweepPoint& a, const SweepPoint& b) {
        if (a.algorithm != b.algorithm) {
            return to_string(a.algorithm) < to_string(b.algorithm);
        }
        if (a.f_ra != b.f_ra) {
            return a.f_ra < b.f_ra;
        }
        if (a.n_stations != b.n_stations) {
            return a.n_stations < b.n_stations;
        }
        return a.lambda < b.lambda;
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const SweepPoint& a, const SweepPoint& b) {
                                 return a.algorithm == b.algorithm && a.f_ra == b.f_ra &&
                                        a.n_stations == b.n_stations && a.lambda == b.lambda;
                             }),
                 points.end());
    return points;
}

SimConfig replication_config(const SweepSpec& spec, const SweepPoint& point, int replication)
{
    SimConfig cfg = spec.base;
    cfg.algorithm = point.algorithm;
    cfg.f_ra = point.f_ra;
    cfg.n_stations = point.n_stations;
    cfg.lambda = point.lambda;
    cfg.seed = derive_seed({spec.base.seed, static_cast<std::uint64_t>(point.algorithm),
                            static_cast<std::uint64_t>(point.f_ra),
                            static_cast<std::uint64_t>(point.n_stations),
                            std::bit_cast<std::uint64_t>(point.lambda),
                            static_cast<std::uint64_t>(replication)});
    return cfg;
}

SweepResult compute_sweep(const SweepSpec& spec, std::ostream& log)
{
    const auto points = sweep_points(spec);
    const auto reps = static_cast<std::size_t>(spec.replications);
    const std::size_t tasks = points.size() * reps;

    std::vector<std::optional<RunMetrics>> results(tasks);
    std::vector<std::string> errors(tasks);
    std::vector<std::atomic<std::size_t>> remaining(points.size());
    for (auto& r : remaining) {
        r.store(reps);
    }
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= tasks) {
                return;
            }
            const std::size_t p = task / reps;
            const int rep = static_cast<int>(task % reps);
            try {
                results[task] = run(replication_config(spec, points[p], rep));
            } catch (const std::exception& e) {
                errors[task] = e.what();
            }
            if (remaining[p].fetch_sub(1) == 1) {
                const std::lock_guard lock(log_mutex);
                log << "done " << to_string(points[p].algorithm) << " f=" << points[p].f_ra
                    << " n=" << points[p].n_stations << " lambda=" << points[p].lambda << '\n';
            }
        }
    };
    const unsigned n_workers = worker_count(spec, tasks);
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n_workers; ++i) {
            pool.emplace_back(worker);
        }
    }

    SweepResult result;
    for (std::size_t p = 0; p < points.size(); ++p) {
        std::string failure;
        for (std::size_t r = 0; r < reps && failure.empty(); ++r) {
            if (!results[p * reps + r]) {
                std::ostringstream os;
                os << to_string(points[p].algorithm) << " f=" << points[p].f_ra
                   << " n=" << points[p].n_stations << " lambda=" << points[p].lambda
                   << " replication " << r << ": " << errors[p * reps + r];
                failure = os.str();
            }
        }
        if (!failure.empty()) {
            result.failures.push_back(failure);
            continue;
        }
        SweepRow row;
        row.point = points[p];
        row.config = replication_config(spec, points[p], 0);
        row.replications = spec.replications;
        row.metrics = *results[p * reps];
        for (std::size_t r = 1; r < reps; ++r) {
            row.metrics.merge(*results[p * reps + r]);
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::string csv_header()
{
    return "algorithm,f,fmax,n_stations,lambda_hz,slot_us,deadline_us,slots,reps,n_delivered,"
           "mean_delay_us,p_late,p_late_ci95,non_rta_share,cycle_slot_fraction,seed_base";
}

std::string csv_row(const SweepRow& row, std::uint64_t seed_base)
{
    const auto& c = row.config;
    const auto& m = row.metrics;
    std::ostringstream os;
    os << to_string(row.point.algorithm) << ',' << row.point.f_ra << ',' << c.f_max << ','
       << row.point.n_stations << ',' << fixed_shortest(row.point.lambda) << ','
       << fixed_shortest(c.slot_duration * 1e6) << ',' << fixed_shortest(c.deadline * 1e6) << ','
       << c.horizon_slots << ',' << row.replications << ',' << m.n_delivered() << ',';
    const auto mean = m.mean_delay();
    const auto p_late = m.p_late();
    const auto ci = m.p_late_ci95();
    os << (mean ? fixed_digits(*mean * 1e6, 4) : "NA") << ','
       << (p_late ? fixed_shortest(*p_late) : "NA") << ','
       << (ci ? fixed_shortest(*ci) : "NA") << ',' << fixed_digits(m.non_rta_share(), 7) << ','
       << fixed_digits(m.slots_in_cycle_fraction(), 7) << ',' << seed_base;
    return os.str();
}

void write_csv(const SweepResult& result, std::uint64_t seed_base, std::ostream& out)
{
    out << csv_header() << '\n';
    for (const auto& row : result.rows) {
        out << csv_row(row, seed_base) << '\n';
    }
}

int run_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& log)
{
    namespace fs = std::filesystem;
    std::optional<fs::path> target;
    std::optional<fs::path> temp;
    if (spec.output_path) {
        target = fs::path(*spec.output_path);
        temp = target->parent_path() / (target->filename().string() + ".tmp");
        // Fail before the (possibly long) sweep if the directory is unwritable.
        std::ofstream probe(*temp, std::ios::binary | std::ios::trunc);
        if (!probe) {
            log << "error: cannot write " << temp->string() << '\n';
            return 1;
        }
    }

    const SweepResult result = compute_sweep(spec, log);
    for (const auto& f : result.failures) {
        log << "error: " << f << '\n';
    }

    if (!target) {
        write_csv(result, spec.base.seed, out);
        out.flush();
    } else {
        {
            std::ofstream file(*temp, std::ios::binary | std::ios::trunc);
            write_csv(result, spec.base.seed, file);
            file.flush();
            if (!file) {
                log << "error: failed writing " << temp->string() << '\n';
                return 1;
            }
        }
        std::error_code ec;
        fs::rename(*temp, *target, ec);
        if (ec) {
            log << "error: cannot rename to " << target->string() << ": " << ec.message() << '\n';
            return 1;
        }
    }
    return result.failures.empty() ? 0 : 1;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    SweepSpec spec;
    try {
        spec = parse_args(argc, argv);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return 2;
    }
    try {
        return run_sweep(spec, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace rtasim
