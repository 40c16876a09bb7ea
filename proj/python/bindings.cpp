#include <filesystem>
#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mobisim/cli.hpp"
#include "mobisim/config.hpp"
#include "mobisim/engine.hpp"
#include "mobisim/fading.hpp"
#include "mobisim/kpi.hpp"
#include "mobisim/link.hpp"
#include "mobisim/mimo.hpp"
#include "mobisim/propagation.hpp"
#include "mobisim/results.hpp"

namespace py = pybind11;
using namespace mobisim;

namespace {

py::dict row_dict(const ResultRow& r)
{
    py::dict d;
    d["seed"] = r.seed;
    d["speed_kmph"] = r.speed_kmph;
    d["scheduler"] = r.scheduler;
    d["tx"] = r.tx;
    d["rx"] = r.rx;
    d["avg_throughput_mbps"] = r.avg_throughput_mbps;
    d["cell_edge_mbps"] = r.cell_edge_mbps;
    d["spectral_eff_bps_hz"] = r.spectral_eff_bps_hz;
    d["fairness"] = r.fairness;
    return d;
}

ResultRow dict_row(const py::dict& d)
{
    ResultRow r;
    r.seed = d["seed"].cast<std::uint64_t>();
    r.speed_kmph = d["speed_kmph"].cast<double>();
    r.scheduler = d["scheduler"].cast<std::string>();
    r.tx = d["tx"].cast<std::size_t>();
    r.rx = d["rx"].cast<std::size_t>();
    r.avg_throughput_mbps = d["avg_throughput_mbps"].cast<double>();
    r.cell_edge_mbps = d["cell_edge_mbps"].cast<double>();
    r.spectral_eff_bps_hz = d["spectral_eff_bps_hz"].cast<double>();
    r.fairness = d["fairness"].cast<double>();
    return r;
}

LinkTables tables_for(const SimConfig& config, const std::optional<std::filesystem::path>& dir)
{
    LinkTables t = load_link_tables(dir            ? *dir
                                    : config.data_dir.empty() ? default_data_dir()
                                                              : std::filesystem::path(config.data_dir));
    t.max_order = config.max_modulation_order;
    return t;
}

py::dict run_dict(const RunResult& r)
{
    py::dict d = row_dict(to_result_row(r));
    d["per_ue_bps"] = r.per_ue_bps;
    d["simulated_ues"] = r.simulated_ues;
    d["handovers"] = r.handovers;
    d["transmitted_blocks"] = r.transmitted_blocks;
    d["failed_blocks"] = r.failed_blocks;
    return d;
}

}  // namespace

PYBIND11_MODULE(_mobisim, m)
{
    m.doc() = "Downlink system-level simulator core";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def("set", &apply_setting, py::arg("key"), py::arg("value"),
             "Apply one key = value setting.")
        .def("validate", &SimConfig::validate)
        .def_readwrite("rings", &SimConfig::rings)
        .def_readwrite("ues_per_sector", &SimConfig::ues_per_sector)
        .def_readwrite("subbands", &SimConfig::subbands)
        .def_readwrite("feedback_delay", &SimConfig::feedback_delay)
        .def_readwrite("ttis_pf", &SimConfig::ttis_pf)
        .def_readwrite("ttis_rr", &SimConfig::ttis_rr)
        .def_readwrite("seeds", &SimConfig::seeds)
        .def_readwrite("base_seed", &SimConfig::base_seed)
        .def_readwrite("speeds_kmph", &SimConfig::speeds_kmph)
        .def_readwrite("tx_power_dbm", &SimConfig::tx_power_dbm)
        .def_readwrite("t_c", &SimConfig::t_c)
        .def_readwrite("workers", &SimConfig::workers)
        .def_readwrite("data_dir", &SimConfig::data_dir)
        .def_property_readonly("modes", [](const SimConfig& c) {
            std::vector<std::string> out;
            for (const auto& mode : c.modes)
                out.push_back(format_mode(mode));
            return out;
        })
        .def_property_readonly("schedulers", [](const SimConfig& c) {
            std::vector<std::string> out;
            for (auto p : c.schedulers)
                out.emplace_back(to_string(p));
            return out;
        });

    m.def("parse_config", &parse_config, py::arg("text"), py::arg("source") = "<config>");
    m.def("load_config", &load_config, py::arg("path"));
    m.def("config_keys", &config_keys);

    m.def(
        "run_point",
        [](const SimConfig& config, double speed_kmph, const std::string& scheduler,
           std::size_t tx, std::size_t rx, std::uint64_t seed,
           std::optional<std::filesystem::path> data_dir) {
            const LinkTables t = tables_for(config, data_dir);
            const SweepPoint p{speed_kmph, parse_scheduler(scheduler), {tx, rx}, seed};
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_point(config, t, p);
            }
            return run_dict(r);
        },
        py::arg("config"), py::arg("speed_kmph"), py::arg("scheduler"), py::arg("tx"),
        py::arg("rx"), py::arg("seed") = 1, py::arg("data_dir") = py::none(),
        "Simulate one sweep point and return its KPIs and per-UE throughputs.");

    m.def(
        "run_sweep",
        [](const SimConfig& config, std::optional<std::size_t> workers,
           std::optional<std::filesystem::path> data_dir) {
            const LinkTables t = tables_for(config, data_dir);
            std::vector<RunResult> runs;
            {
                py::gil_scoped_release release;
                runs = run_sweep(config, t, workers.value_or(config.workers));
            }
            py::list out;
            for (const auto& r : runs)
                out.append(row_dict(to_result_row(r)));
            return out;
        },
        py::arg("config"), py::arg("workers") = py::none(), py::arg("data_dir") = py::none(),
        "Run every sweep point; returns one row dict per point and seed.");

    m.def(
        "write_outputs",
        [](const std::vector<py::dict>& rows, const std::filesystem::path& dir) {
            std::vector<ResultRow> r;
            for (const auto& d : rows)
                r.push_back(dict_row(d));
            write_outputs(r, dir);
        },
        py::arg("rows"), py::arg("out_dir"));
    m.def(
        "results_csv",
        [](const std::vector<py::dict>& rows) {
            std::vector<ResultRow> r;
            for (const auto& d : rows)
                r.push_back(rounded(dict_row(d)));
            std::ostringstream s;
            write_results_csv(r, s);
            return s.str();
        },
        py::arg("rows"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line front end; returns (code, stdout, stderr).");

    m.def("average_throughput", [](const std::vector<double>& v) { return average_throughput(v); });
    m.def("cell_edge_throughput", [](const std::vector<double>& v) { return cell_edge_throughput(v); });
    m.def("spectral_efficiency", [](const std::vector<double>& v, double bw) {
        return spectral_efficiency(v, bw);
    });
    m.def("jain_fairness", [](const std::vector<double>& v) { return jain_fairness(v); });

    m.def("path_loss_db", &path_loss_db, py::arg("distance_km"), py::arg("bs_height_m"),
          py::arg("carrier_mhz"), py::arg("min_distance_km") = 0.035);
    m.def("doppler_hz", &doppler_hz, py::arg("speed_kmph"), py::arg("carrier_hz"));
    m.def("bessel_j0", &bessel_j0);
    m.def("lag1_correlation", &lag1_correlation, py::arg("doppler_hz"), py::arg("tti_s"));

    m.def(
        "mmse_layer_sinrs",
        [](const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& w, double noise) {
            if (h.rows() > 4 || h.cols() > 4 || w.rows() > 4 || w.cols() > 4)
                throw std::invalid_argument("matrices are limited to 4x4");
            const RVector s = mmse_layer_sinrs(CMatrix(h), CMatrix(w), noise);
            return Eigen::VectorXd(s);
        },
        py::arg("h"), py::arg("w"), py::arg("noise_power"));
    m.def(
        "codebook",
        [](std::size_t tx, std::size_t rank) {
            std::vector<Eigen::MatrixXcd> out;
            for (const auto& p : codebook(tx, rank))
                out.emplace_back(p.w);
            return out;
        },
        py::arg("tx"), py::arg("rank"));
    m.def(
        "select_rank_pmi",
        [](const std::vector<Eigen::MatrixXcd>& h, const std::vector<double>& noise,
           std::size_t cap) {
            std::vector<CMatrix> hs;
            for (const auto& x : h) {
                if (x.rows() > 4 || x.cols() > 4)
                    throw std::invalid_argument("matrices are limited to 4x4");
                hs.emplace_back(x);
            }
            const auto c = select_rank_pmi(hs, noise, cap);
            return py::make_tuple(c.rank, c.codebook_index, c.score);
        },
        py::arg("h"), py::arg("noise_power"), py::arg("max_rank") = 4,
        "Returns (rank, codebook_index, score).");
}
