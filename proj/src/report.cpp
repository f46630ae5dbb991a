#include "rqk/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rqk {
namespace {

constexpr const char* kRawHeader = "task,d,kernel,sigma,seed,accuracy,n_test";
constexpr const char* kAggregateHeader =
    "task,d,kernel,sigma,mean_accuracy,std_accuracy,n_seeds";

std::string fmt(const char* pattern, double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

std::string kernel_name(KernelKind k) { return k == KernelKind::rbf ? "rbf" : "quantum"; }

KernelKind kernel_from_name(const std::string& s) {
    if (s == "rbf") return KernelKind::rbf;
    if (s == "quantum") return KernelKind::quantum;
    throw std::runtime_error("unknown kernel name in CSV: " + s);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) fields.push_back(item);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string serialize_raw_csv(const std::vector<RunRecord>& records) {
    std::string out(kRawHeader);
    out += '\n';
    for (const RunRecord& r : records) {
        out += task_name(r.task);
        out += ',' + std::to_string(r.d);
        out += ',' + kernel_name(r.kernel);
        out += ',' + fmt("%g", r.sigma);
        out += ',' + std::to_string(r.seed);
        out += ',' + fmt("%.10g", r.accuracy);
        out += ',' + std::to_string(r.n_test);
        out += '\n';
    }
    return out;
}

std::vector<RunRecord> parse_raw_csv(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line) || line != kRawHeader)
        throw std::runtime_error("raw CSV header mismatch; expected '" + std::string(kRawHeader) +
                                 "'");
    std::vector<RunRecord> records;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 7)
            throw std::runtime_error("malformed raw CSV line: " + line);
        RunRecord r;
        r.task = task_from_name(fields[0]);
        r.d = std::stoi(fields[1]);
        r.kernel = kernel_from_name(fields[2]);
        r.sigma = std::stod(fields[3]);
        r.seed = std::stoull(fields[4]);
        r.accuracy = std::stod(fields[5]);
        r.n_test = std::stoi(fields[6]);
        r.n_correct = static_cast<int>(std::lround(r.accuracy * r.n_test));
        records.push_back(r);
    }
    return records;
}

std::vector<RunRecord> read_raw_csv(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open raw CSV: " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_raw_csv(buffer.str());
}

std::string serialize_aggregate_csv(const std::vector<CellAggregate>& aggregates) {
    std::string out(kAggregateHeader);
    out += '\n';
    for (const CellAggregate& a : aggregates) {
        out += task_name(a.task);
        out += ',' + std::to_string(a.d);
        out += ',' + kernel_name(a.kernel);
        out += ',' + fmt("%g", a.sigma);
        out += ',' + fmt("%.10g", a.mean_accuracy);
        out += ',';
        if (a.std_accuracy) out += fmt("%.10g", *a.std_accuracy);
        out += ',' + std::to_string(a.n_seeds);
        out += '\n';
    }
    return out;
}

namespace {

// ---- markdown tables ----

const CellAggregate* find_cell(const std::vector<CellAggregate>& aggs, Task task, int d,
                               KernelKind kernel, double sigma) {
    for (const CellAggregate& a : aggs)
        if (a.task == task && a.d == d && a.kernel == kernel && a.sigma == sigma) return &a;
    return nullptr;
}

std::string mean_std_cell(const CellAggregate* a) {
    if (!a) return "-";
    std::string s = fmt("%.3f", a->mean_accuracy);
    if (a->std_accuracy) s += " +/- " + fmt("%.3f", *a->std_accuracy);
    return s;
}

std::string markdown_tables(const std::vector<CellAggregate>& aggs) {
    std::set<Task> tasks;
    std::set<int> clean_dims, noise_dims;
    std::set<double> noise_sigmas;
    for (const CellAggregate& a : aggs) {
        tasks.insert(a.task);
        if (a.sigma == 0.0) clean_dims.insert(a.d);
        else {
            noise_dims.insert(a.d);
            noise_sigmas.insert(a.sigma);
        }
    }

    std::ostringstream md;
    md << "# Clean accuracy by PCA dimension (mean +/- std over seeds)\n\n";
    md << "| d |";
    for (Task task : tasks)
        md << " " << task_name(task) << " rbf | " << task_name(task) << " quantum |";
    md << "\n|---|";
    for (std::size_t i = 0; i < tasks.size() * 2; ++i) md << "---|";
    md << "\n";
    for (int d : clean_dims) {
        md << "| " << d << " |";
        for (Task task : tasks) {
            md << " " << mean_std_cell(find_cell(aggs, task, d, KernelKind::rbf, 0.0)) << " |";
            md << " " << mean_std_cell(find_cell(aggs, task, d, KernelKind::quantum, 0.0)) << " |";
        }
        md << "\n";
    }

    if (!noise_sigmas.empty()) {
        md << "\n# Noise sweep (mean accuracy, rbf/quantum)\n\n";
        md << "| task | d |";
        md << " sigma=0 |";
        for (double s : noise_sigmas) md << " sigma=" << fmt("%g", s) << " |";
        md << "\n|---|---|";
        for (std::size_t i = 0; i <= noise_sigmas.size(); ++i) md << "---|";
        md << "\n";
        for (Task task : tasks) {
            for (int d : noise_dims) {
                md << "| " << task_name(task) << " | " << d << " |";
                auto pair_cell = [&](double sigma) {
                    const CellAggregate* rbf = find_cell(aggs, task, d, KernelKind::rbf, sigma);
                    const CellAggregate* q = find_cell(aggs, task, d, KernelKind::quantum, sigma);
                    std::string cell = (rbf ? fmt("%.3f", rbf->mean_accuracy) : std::string("-"));
                    cell += "/";
                    cell += (q ? fmt("%.3f", q->mean_accuracy) : std::string("-"));
                    return cell;
                };
                md << " " << pair_cell(0.0) << " |";
                for (double s : noise_sigmas) md << " " << pair_cell(s) << " |";
                md << "\n";
            }
        }
    }
    return md.str();
}

// ---- SVG line plots ----

struct PlotPoint {
    double x = 0.0;
    double y = 0.0;
    double err = 0.0;  // half-width of the 95% CI whisker
};

struct PlotSeries {
    std::string name;
    std::string color;
    std::vector<PlotPoint> points;
};

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::vector<PlotSeries>& series) {
    const double width = 640.0, height = 420.0;
    const double left = 66.0, right = 24.0, top = 40.0, bottom = 52.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const PlotSeries& s : series) {
        for (const PlotPoint& p : s.points) {
            x_min = std::min(x_min, p.x);
            x_max = std::max(x_max, p.x);
            y_min = std::min(y_min, p.y - p.err);
            y_max = std::max(y_max, p.y + p.err);
        }
    }
    if (x_min > x_max) {
        x_min = 0.0;
        x_max = 1.0;
    }
    if (y_min > y_max) {
        y_min = 0.0;
        y_max = 1.0;
    }
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    double pad = (y_max - y_min) * 0.10;
    if (pad == 0.0) pad = 0.05;
    y_min = std::max(0.0, y_min - pad);
    y_max = std::min(1.02, y_max + pad);
    if (y_max <= y_min) y_max = y_min + 0.05;

    auto map_x = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto map_y = [&](double y) { return top + (y_max - y) / (y_max - y_min) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"15\">" << title << "</text>\n";

    // frame
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

    // y ticks
    for (int t = 0; t <= 5; ++t) {
        const double y = y_min + (y_max - y_min) * t / 5.0;
        const double py = map_y(y);
        svg << "<line x1=\"" << left << "\" y1=\"" << fmt("%.2f", py) << "\" x2=\""
            << width - right << "\" y2=\"" << fmt("%.2f", py)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << fmt("%.2f", py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt("%.3f", y) << "</text>\n";
    }

    // x ticks at every distinct data x
    std::set<double> xs;
    for (const PlotSeries& s : series)
        for (const PlotPoint& p : s.points) xs.insert(p.x);
    for (double x : xs) {
        const double px = map_x(x);
        svg << "<line x1=\"" << fmt("%.2f", px) << "\" y1=\"" << top + plot_h << "\" x2=\""
            << fmt("%.2f", px) << "\" y2=\"" << top + plot_h + 5
            << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fmt("%.2f", px) << "\" y=\"" << top + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt("%g", x) << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
        << "</text>\n";
    svg << "<text x=\"16\" y=\"" << top + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\""
        << " transform=\"rotate(-90 16 " << top + plot_h / 2 << ")\">accuracy</text>\n";

    // series
    double legend_y = top + 14.0;
    for (const PlotSeries& s : series) {
        if (s.points.empty()) continue;
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
        for (const PlotPoint& p : s.points)
            svg << fmt("%.2f", map_x(p.x)) << "," << fmt("%.2f", map_y(p.y)) << " ";
        svg << "\"/>\n";
        for (const PlotPoint& p : s.points) {
            const double px = map_x(p.x);
            if (p.err > 0.0) {
                const double y1 = map_y(p.y - p.err), y2 = map_y(p.y + p.err);
                svg << "<line x1=\"" << fmt("%.2f", px) << "\" y1=\"" << fmt("%.2f", y1)
                    << "\" x2=\"" << fmt("%.2f", px) << "\" y2=\"" << fmt("%.2f", y2)
                    << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"/>\n";
                for (double yw : {y1, y2})
                    svg << "<line x1=\"" << fmt("%.2f", px - 4) << "\" y1=\"" << fmt("%.2f", yw)
                        << "\" x2=\"" << fmt("%.2f", px + 4) << "\" y2=\"" << fmt("%.2f", yw)
                        << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"/>\n";
            }
            svg << "<circle cx=\"" << fmt("%.2f", px) << "\" cy=\"" << fmt("%.2f", map_y(p.y))
                << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
        }
        svg << "<rect x=\"" << left + 10 << "\" y=\"" << fmt("%.2f", legend_y - 9)
            << "\" width=\"12\" height=\"12\" fill=\"" << s.color << "\"/>\n";
        svg << "<text x=\"" << left + 27 << "\" y=\"" << fmt("%.2f", legend_y + 1)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
        legend_y += 18.0;
    }
    svg << "</svg>\n";
    return svg.str();
}

// 95% normal-approximation confidence half-width
double ci_half_width(const CellAggregate& a) {
    if (!a.std_accuracy || a.n_seeds < 2) return 0.0;
    return 1.96 * *a.std_accuracy / std::sqrt(static_cast<double>(a.n_seeds));
}

void write_plots(const std::filesystem::path& out_dir, const std::vector<CellAggregate>& aggs) {
    std::set<Task> tasks;
    for (const CellAggregate& a : aggs) tasks.insert(a.task);

    for (Task task : tasks) {
        // accuracy vs d at sigma = 0
        std::vector<PlotSeries> series{{"rbf", "#1f6fb4", {}}, {"quantum", "#d95f02", {}}};
        std::set<int> dims;
        for (const CellAggregate& a : aggs)
            if (a.task == task && a.sigma == 0.0) dims.insert(a.d);
        for (int d : dims) {
            if (const auto* a = find_cell(aggs, task, d, KernelKind::rbf, 0.0))
                series[0].points.push_back({static_cast<double>(d), a->mean_accuracy, ci_half_width(*a)});
            if (const auto* a = find_cell(aggs, task, d, KernelKind::quantum, 0.0))
                series[1].points.push_back({static_cast<double>(d), a->mean_accuracy, ci_half_width(*a)});
        }
        const std::string name = std::string("accuracy_vs_d_") + task_name(task) + ".svg";
        write_file(out_dir / name,
                   svg_line_plot(std::string("clean accuracy vs PCA dimension (") +
                                     task_name(task) + ")",
                                 "PCA dimension d", series));

        // accuracy vs sigma per noise dim
        std::set<int> noise_dims;
        std::set<double> sigmas;
        for (const CellAggregate& a : aggs)
            if (a.task == task && a.sigma > 0.0) {
                noise_dims.insert(a.d);
                sigmas.insert(a.sigma);
            }
        for (int d : noise_dims) {
            std::vector<PlotSeries> sweep{{"rbf", "#1f6fb4", {}}, {"quantum", "#d95f02", {}}};
            auto push = [&](double sigma) {
                if (const auto* a = find_cell(aggs, task, d, KernelKind::rbf, sigma))
                    sweep[0].points.push_back({sigma, a->mean_accuracy, ci_half_width(*a)});
                if (const auto* a = find_cell(aggs, task, d, KernelKind::quantum, sigma))
                    sweep[1].points.push_back({sigma, a->mean_accuracy, ci_half_width(*a)});
            };
            push(0.0);
            for (double s : sigmas) push(s);
            const std::string sweep_name = std::string("accuracy_vs_sigma_") + task_name(task) +
                                           "_d" + std::to_string(d) + ".svg";
            write_file(out_dir / sweep_name,
                       svg_line_plot(std::string("test-noise sweep (") + task_name(task) +
                                         ", d=" + std::to_string(d) + ")",
                                     "noise fraction sigma", sweep));
        }
    }
}

}  // namespace

void emit_report(const std::filesystem::path& out_dir, const std::vector<RunRecord>& records,
                 const std::vector<ReportFormat>& formats) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("emit_report: cannot create " + out_dir.string());

    const std::string raw = serialize_raw_csv(records);
    const std::vector<RunRecord> parsed = parse_raw_csv(raw);
    const std::vector<CellAggregate> aggs = aggregate(parsed);

    const bool want_csv = std::count(formats.begin(), formats.end(), ReportFormat::csv) > 0;
    const bool want_md = std::count(formats.begin(), formats.end(), ReportFormat::markdown) > 0;
    const bool want_svg = std::count(formats.begin(), formats.end(), ReportFormat::svg) > 0;

    if (want_csv) {
        write_file(out_dir / "raw.csv", raw);
        write_file(out_dir / "aggregate.csv", serialize_aggregate_csv(aggs));
    }
    if (want_md) write_file(out_dir / "tables.md", markdown_tables(aggs));
    if (want_svg) write_plots(out_dir, aggs);
}

void render_from_raw_csv(const std::filesystem::path& raw_csv,
                         const std::filesystem::path& out_dir,
                         const std::vector<ReportFormat>& formats) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("render_from_raw_csv: cannot create " + out_dir.string());

    const std::vector<RunRecord> parsed = read_raw_csv(raw_csv);
    const std::vector<CellAggregate> aggs = aggregate(parsed);

    const bool want_csv = std::count(formats.begin(), formats.end(), ReportFormat::csv) > 0;
    const bool want_md = std::count(formats.begin(), formats.end(), ReportFormat::markdown) > 0;
    const bool want_svg = std::count(formats.begin(), formats.end(), ReportFormat::svg) > 0;

    if (want_csv) write_file(out_dir / "aggregate.csv", serialize_aggregate_csv(aggs));
    if (want_md) write_file(out_dir / "tables.md", markdown_tables(aggs));
    if (want_svg) write_plots(out_dir, aggs);
}

}  // namespace rqk
