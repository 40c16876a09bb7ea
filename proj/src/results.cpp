#include "mobisim/results.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mobisim {

namespace {

double parse_field(const std::string& text, int line)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty())
        throw std::runtime_error("results.csv:" + std::to_string(line) + ": bad number '" + text +
                                 "'");
    return v;
}

double reparse(double v) { return std::stod(format_number(v)); }

}  // namespace

std::string format_number(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

ResultRow to_result_row(const RunResult& run)
{
    ResultRow row;
    row.seed = run.point.seed;
    row.speed_kmph = run.point.speed_kmph;
    row.scheduler = std::string(to_string(run.point.scheduler));
    row.tx = run.point.mode.tx;
    row.rx = run.point.mode.rx;
    row.avg_throughput_mbps = run.kpis.average_bps / 1e6;
    row.cell_edge_mbps = run.kpis.cell_edge_bps / 1e6;
    row.spectral_eff_bps_hz = run.kpis.spectral_efficiency;
    row.fairness = run.kpis.fairness;
    return row;
}

ResultRow rounded(const ResultRow& row)
{
    ResultRow r = row;
    r.speed_kmph = reparse(r.speed_kmph);
    r.avg_throughput_mbps = reparse(r.avg_throughput_mbps);
    r.cell_edge_mbps = reparse(r.cell_edge_mbps);
    r.spectral_eff_bps_hz = reparse(r.spectral_eff_bps_hz);
    r.fairness = reparse(r.fairness);
    return r;
}

void write_results_csv(std::span<const ResultRow> rows, std::ostream& out)
{
    out << kResultsHeader << '\n';
    for (const ResultRow& r : rows) {
        out << r.seed << ',' << format_number(r.speed_kmph) << ',' << r.scheduler << ',' << r.tx
            << ',' << r.rx << ',' << format_number(r.avg_throughput_mbps) << ','
            << format_number(r.cell_edge_mbps) << ',' << format_number(r.spectral_eff_bps_hz)
            << ',' << format_number(r.fairness) << '\n';
    }
}

std::vector<ResultRow> read_results_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kResultsHeader)
        throw std::runtime_error("results.csv: unexpected header");
    std::vector<ResultRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 9)
            throw std::runtime_error("results.csv:" + std::to_string(lineno) +
                                     ": expected 9 fields");
        ResultRow r;
        r.seed = std::stoull(f[0]);
        r.speed_kmph = parse_field(f[1], lineno);
        r.scheduler = f[2];
        r.tx = std::stoul(f[3]);
        r.rx = std::stoul(f[4]);
        r.avg_throughput_mbps = parse_field(f[5], lineno);
        r.cell_edge_mbps = parse_field(f[6], lineno);
        r.spectral_eff_bps_hz = parse_field(f[7], lineno);
        r.fairness = parse_field(f[8], lineno);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string sweep_key(const ResultRow& row)
{
    return row.scheduler + "/" + std::to_string(row.tx) + "x" + std::to_string(row.rx) + "/" +
           format_number(row.speed_kmph);
}

std::string summary_json(std::span<const ResultRow> rows)
{
    struct Acc {
        std::vector<const ResultRow*> rows;
    };
    // Keys kept in first-seen order so the file follows the sweep order.
    std::vector<std::string> order;
    std::map<std::string, Acc> groups;
    for (const ResultRow& r : rows) {
        const std::string key = sweep_key(r);
        if (!groups.count(key))
            order.push_back(key);
        groups[key].rows.push_back(&r);
    }

    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const std::string& key : order) {
        const auto& group = groups[key].rows;
        const ResultRow& first = *group.front();
        nlohmann::ordered_json entry;
        entry["scheduler"] = first.scheduler;
        entry["tx"] = first.tx;
        entry["rx"] = first.rx;
        entry["speed_kmph"] = first.speed_kmph;
        nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
        for (const ResultRow* r : group)
            seeds.push_back(r->seed);
        entry["seeds"] = seeds;

        auto stats = [&](double ResultRow::*field) {
            double sum = 0.0;
            double lo = group.front()->*field;
            double hi = lo;
            for (const ResultRow* r : group) {
                const double v = r->*field;
                sum += v;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            nlohmann::ordered_json s;
            s["mean"] = sum / static_cast<double>(group.size());
            s["min"] = lo;
            s["max"] = hi;
            return s;
        };
        entry["avg_throughput_mbps"] = stats(&ResultRow::avg_throughput_mbps);
        entry["cell_edge_mbps"] = stats(&ResultRow::cell_edge_mbps);
        entry["spectral_eff_bps_hz"] = stats(&ResultRow::spectral_eff_bps_hz);
        entry["fairness"] = stats(&ResultRow::fairness);
        doc[key] = entry;
    }
    return doc.dump(2) + "\n";
}

void write_outputs(std::span<const ResultRow> rows, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + dir.string() +
                                 "': " + ec.message());

    // Aggregates are taken over the values exactly as written to the CSV.
    std::vector<ResultRow> as_written;
    as_written.reserve(rows.size());
    for (const ResultRow& r : rows)
        as_written.push_back(rounded(r));

    std::ofstream csv(dir / "results.csv", std::ios::binary | std::ios::trunc);
    if (!csv)
        throw std::runtime_error("cannot write '" + (dir / "results.csv").string() + "'");
    write_results_csv(rows, csv);
    if (!csv)
        throw std::runtime_error("write failed for results.csv");

    std::ofstream json(dir / "summary.json", std::ios::binary | std::ios::trunc);
    if (!json)
        throw std::runtime_error("cannot write '" + (dir / "summary.json").string() + "'");
    json << summary_json(as_written);
    if (!json)
        throw std::runtime_error("write failed for summary.json");
}

}  // namespace mobisim
