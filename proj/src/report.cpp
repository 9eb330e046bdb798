#include "pioneer/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pioneer/errors.hpp"
#include "pioneer/svg.hpp"

namespace pioneer {

namespace fs = std::filesystem;

fs::path default_output_dir() {
    const char* env = std::getenv("PIONEER_OUT_DIR");
    if (env != nullptr && *env != '\0') return fs::path(env);
    return fs::path("pioneer_out");
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

std::string rmse_by_period_csv(const MetricsReport& report) {
    std::ostringstream o;
    o << "method,period,rmse,mc_se\n";
    for (const auto& m : report.methods) {
        for (std::size_t p = 0; p < report.periods.size(); ++p) {
            o << m.name << ',' << report.periods[p] << ',' << format_number(m.rmse[p]) << ','
              << format_number(m.mc_se[p]) << '\n';
        }
    }
    return o.str();
}

std::string stability_csv(const MetricsReport& report) {
    std::ostringstream o;
    o << "method,mean,median,std\n";
    for (const auto& m : report.methods) {
        o << m.name << ',' << format_number(m.stability.mean) << ',' << format_number(m.stability.median) << ','
          << format_number(m.stability.std) << '\n';
    }
    return o.str();
}

std::string weights_csv(std::span<const SimulationRun> runs, std::uint64_t first_replication) {
    std::ostringstream o;
    o << "replication,method,expert,period,weight\n";
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const SimulationRun& run = runs[r];
        for (const auto& method : run.methods) {
            if (!produces_weights(method.kind)) continue;
            for (std::size_t t = 0; t < run.periods(); ++t) {
                if (!run.usable(t)) continue;
                for (std::size_t i = 0; i < run.experts; ++i) {
                    o << first_replication + r << ',' << to_string(method.kind) << ',' << i << ',' << t << ','
                      << format_number(method.weights.weight(i, t)) << '\n';
                }
            }
        }
    }
    return o.str();
}

std::vector<fs::path> write_report(const MetricsReport& report, std::span<const SimulationRun> runs,
                                   const RunManifest& manifest) {
    const fs::path& dir = manifest.output_dir;
    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        write_text_file(dir / name, content);
        written.push_back(dir / name);
    };
    emit("rmse_by_period.csv", rmse_by_period_csv(report));
    emit("stability.csv", stability_csv(report));
    emit("weights.csv", weights_csv(runs));
    if (manifest.svg) {
        LineChart chart{"RMSE by period", "period", "RMSE", {}, true};
        for (const auto& m : report.methods) {
            ChartSeries s{m.name, {}, m.rmse};
            for (std::size_t p : report.periods) s.x.push_back(static_cast<double>(p));
            chart.series.push_back(std::move(s));
        }
        emit("rmse_by_period.svg", render_svg(chart));
    }
    return written;
}

std::vector<fs::path> write_report(const SimulationRun& run, const RunManifest& manifest, std::uint64_t replication) {
    const fs::path& dir = manifest.output_dir;
    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        write_text_file(dir / name, content);
        written.push_back(dir / name);
    };
    emit("weights.csv", weights_csv(std::span(&run, 1), replication));

    std::ostringstream o;
    o << "method,period,pooled,truth\n";
    for (const auto& method : run.methods) {
        for (std::size_t t = 0; t < run.periods(); ++t) {
            o << to_string(method.kind) << ',' << t << ',' << format_number(method.pooled[t]) << ','
              << format_number(run.truth.values[t]) << '\n';
        }
    }
    emit("pooled_series.csv", o.str());

    if (manifest.svg) {
        LineChart chart{"Pooled estimates", "period", "tail index", {}, false};
        ChartSeries truth{"truth", {}, run.truth.values};
        for (std::size_t t = 0; t < run.periods(); ++t) truth.x.push_back(static_cast<double>(t));
        for (const auto& method : run.methods) chart.series.push_back({std::string(to_string(method.kind)), truth.x, method.pooled});
        chart.series.push_back(std::move(truth));
        emit("pooled_series.svg", render_svg(chart));
    }
    return written;
}

std::vector<fs::path> write_welfare_report(const WelfareCurve& curve, const RunManifest& manifest) {
    const fs::path& dir = manifest.output_dir;
    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        write_text_file(dir / name, content);
        written.push_back(dir / name);
    };
    std::ostringstream norm, raw;
    norm << "m,ratio,fit,net_benefit_no_lambda,net_benefit_lambda\n";
    raw << "m,sigma_tool,sigma_full,sigma_mean,ratio,fit,net_benefit_no_lambda,net_benefit_lambda,decision\n";
    for (const auto& r : curve.rows) {
        norm << r.m << ',' << format_number(r.ratio) << ',' << format_number(r.fit) << ','
             << format_number(r.normalized_no_lambda) << ',' << format_number(r.normalized_lambda) << '\n';
        raw << r.m << ',' << format_number(r.sigma_tool) << ',' << format_number(r.sigma_full) << ','
            << format_number(r.sigma_mean) << ',' << format_number(r.ratio) << ',' << format_number(r.fit) << ','
            << format_number(r.net_benefit_no_lambda) << ',' << format_number(r.net_benefit_lambda) << ','
            << to_string(r.decision) << '\n';
    }
    emit("welfare_curve.csv", norm.str());
    emit("welfare_curve_raw.csv", raw.str());
    if (manifest.svg) {
        LineChart chart{"Net benefit of full information", "number of insurers", "normalized net benefit", {}, false};
        ChartSeries a{"without lambda", {}, {}}, b{"with lambda", {}, {}};
        for (const auto& r : curve.rows) {
            a.x.push_back(static_cast<double>(r.m));
            a.y.push_back(r.normalized_no_lambda);
            b.x.push_back(static_cast<double>(r.m));
            b.y.push_back(r.normalized_lambda);
        }
        chart.series = {std::move(a), std::move(b)};
        emit("welfare_curve.svg", render_svg(chart));
    }
    return written;
}

std::vector<fs::path> write_linear_ts_report(const LinearTsStudy& study, const RunManifest& manifest) {
    static constexpr const char* kSeries[] = {"x", "y", "z"};
    std::ostringstream o;
    o << "method,series,average_weight\n";
    for (std::size_t k = 0; k < study.methods.size(); ++k) {
        for (std::size_t s = 0; s < 3; ++s) {
            o << to_string(study.methods[k]) << ',' << kSeries[s] << ',' << format_number(study.average_weights[k][s])
              << '\n';
        }
    }
    const fs::path path = manifest.output_dir / "linear_ts_weights.csv";
    write_text_file(path, o.str());
    return {path};
}

}  // namespace pioneer
