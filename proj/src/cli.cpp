#include "mobisim/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "mobisim/config.hpp"
#include "mobisim/engine.hpp"
#include "mobisim/geometry.hpp"
#include "mobisim/link.hpp"
#include "mobisim/results.hpp"

namespace mobisim {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Downlink system-level simulator: UE velocity vs throughput, cell-edge "
                 "throughput, spectral efficiency and fairness"};
    app.name("mobisim");

    std::string config_path;
    std::string scheduler, speed, tx, rx, out_dir = "results", layout_csv;
    std::size_t ttis = 0, seeds = 0, workers = 0;
    bool quiet = false;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--scheduler", scheduler, "rr, pf or a comma list");
    app.add_option("--speed", speed, "speed in km/h or a comma list");
    app.add_option("--tx", tx, "transmit antennas (2 or 4, comma list allowed)");
    app.add_option("--rx", rx, "receive antennas (2..4, comma list allowed)");
    app.add_option("--ttis", ttis, "measured TTIs for both schedulers");
    app.add_option("--seeds", seeds, "number of seeds per sweep point");
    app.add_option("--workers", workers, "parallel sweep workers");
    app.add_option("--out", out_dir, "output directory for results.csv and summary.json");
    app.add_option("--export-layout", layout_csv, "also write the site/sector layout as CSV");
    app.add_flag("--quiet", quiet, "suppress progress output");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "mobisim: " << e.what() << "\n";
        return 2;
    }

    SimConfig config;
    try {
        if (!config_path.empty())
            config = load_config(config_path);
        auto override_key = [&](const char* key, const std::string& value) {
            if (!value.empty())
                apply_setting(config, key, value);
        };
        override_key("scheduler", scheduler);
        override_key("speed_kmph", speed);
        override_key("tx_antennas", tx);
        override_key("rx_antennas", rx);
        if (ttis > 0)
            override_key("ttis", std::to_string(ttis));
        if (seeds > 0)
            override_key("seeds", std::to_string(seeds));
        if (workers > 0)
            override_key("workers", std::to_string(workers));
        config.validate();
    } catch (const ConfigError& e) {
        err << "mobisim: configuration error: " << e.what() << "\n";
        return 2;
    }

    try {
        const LinkTables base =
            load_link_tables(config.data_dir.empty() ? default_data_dir()
                                                         : std::filesystem::path(config.data_dir));
        LinkTables tables = base;
        tables.max_order = config.max_modulation_order;

        if (!layout_csv.empty()) {
            std::ofstream f(layout_csv);
            if (!f)
                throw std::runtime_error("cannot write '" + layout_csv + "'");
            write_layout_csv(build_layout(layout_options(config)), f);
        }

        const auto start = std::chrono::steady_clock::now();
        const std::vector<RunResult> runs = run_sweep(config, tables, config.workers);
        std::vector<ResultRow> rows;
        rows.reserve(runs.size());
        for (const RunResult& r : runs)
            rows.push_back(to_result_row(r));
        write_outputs(rows, out_dir);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!quiet)
            out << "mobisim: " << rows.size() << " rows written to " << out_dir << " in "
                << format_number(seconds) << " s\n";
    } catch (const std::exception& e) {
        err << "mobisim: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace mobisim
