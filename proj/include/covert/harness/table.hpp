#pragma once

// Rectangular numeric result tables: CSV with a `#` provenance header, and a plain SVG 1.1
// rendering drawn from the same cells.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "covert/error.hpp"
#include "covert/harness/config.hpp"
#include "covert/version.hpp"

namespace covert::harness {

struct PlotSpec {
    enum class Kind { line, box, heatmap } kind = Kind::line;
    std::string x;                    // x column
    std::vector<std::string> series;  // line: y columns
    // box: one box per row, grouped into series by `group` and into panels by `panel`
    std::string group, panel, q1, median, q3;
    // heatmap: y column and value column
    std::string y, value;
    std::string x_label, y_label;
    std::map<double, std::string> group_names;
};

class ResultTable {
public:
    ResultTable() = default;
    ResultTable(std::string title, std::vector<std::string> columns)
        : title_(std::move(title)), columns_(std::move(columns)) {}

    const std::string& title() const noexcept { return title_; }
    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    std::size_t row_count() const noexcept { return rows_.size(); }

    void add_row(std::vector<double> row) {
        if (row.size() != columns_.size()) {
            throw ParameterError("row", "expected " + std::to_string(columns_.size()) + " cells, got " +
                                            std::to_string(row.size()));
        }
        rows_.push_back(std::move(row));
    }

    std::size_t column_index(const std::string& name) const {
        const auto it = std::find(columns_.begin(), columns_.end(), name);
        if (it == columns_.end()) throw ParameterError("column", "no column named '" + name + "'");
        return static_cast<std::size_t>(it - columns_.begin());
    }

    std::vector<double> column(const std::string& name) const {
        const std::size_t j = column_index(name);
        std::vector<double> out;
        out.reserve(rows_.size());
        for (const auto& r : rows_) out.push_back(r[j]);
        return out;
    }

    /// `# key: value` header lines, in insertion order.
    void add_provenance(std::string key, std::string value) { provenance_.emplace_back(std::move(key), std::move(value)); }
    void add_setting(const std::string& key, double value) { add_provenance("config", key + "=" + format_number(value)); }
    void add_setting(const std::string& key, const std::string& value) { add_provenance("config", key + "=" + value); }
    void add_assumption(std::string text) { add_provenance("assumption", std::move(text)); }

    /// Standard header: version, seed and a hash over every `config` line.
    void stamp(std::uint64_t seed) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const auto& [k, v] : provenance_) {
            if (k != "config") continue;
            h = fnv1a64(v, h);
            h = fnv1a64("\n", h);
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
        provenance_.insert(provenance_.begin(), {"config-hash", buf});
        provenance_.insert(provenance_.begin(), {"seed", std::to_string(seed)});
        provenance_.insert(provenance_.begin(), {"version", kVersion});
        provenance_.insert(provenance_.begin(), {"table", title_});
    }

    const std::vector<std::pair<std::string, std::string>>& provenance() const noexcept { return provenance_; }

    PlotSpec& plot() noexcept { return plot_; }
    const PlotSpec& plot() const noexcept { return plot_; }

    std::string to_csv() const {
        std::string out;
        for (const auto& [k, v] : provenance_) out += "# " + k + ": " + v + "\n";
        for (std::size_t j = 0; j < columns_.size(); ++j) out += (j ? "," : "") + columns_[j];
        out += "\n";
        for (const auto& r : rows_) {
            for (std::size_t j = 0; j < r.size(); ++j) {
                if (j) out += ',';
                out += format_number(r[j]);
            }
            out += "\n";
        }
        return out;
    }

private:
    std::string title_;
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> provenance_;
    PlotSpec plot_;
};

namespace svg_detail {

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return colors[i % 10];
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double left = 70, top = 40, width = 560, height = 300;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

    double px(double x) const { return left + (x - x0) / (x1 - x0) * width; }
    double py(double y) const { return top + height - (y - y0) / (y1 - y0) * height; }
};

inline void widen(double& lo, double& hi) {
    if (!(hi > lo)) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.05;
        lo -= pad;
        hi += pad;
    }
}

inline std::string axes(const Frame& f, const std::string& x_label, const std::string& y_label) {
    std::string s;
    s += "<rect x=\"" + num(f.left) + "\" y=\"" + num(f.top) + "\" width=\"" + num(f.width) + "\" height=\"" +
         num(f.height) + "\" fill=\"none\" stroke=\"#000\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
        const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
        s += "<text x=\"" + num(f.px(xv)) + "\" y=\"" + num(f.top + f.height + 16) +
             "\" font-size=\"11\" text-anchor=\"middle\">" + format_number(std::round(xv * 1e4) / 1e4) + "</text>\n";
        s += "<text x=\"" + num(f.left - 6) + "\" y=\"" + num(f.py(yv) + 4) +
             "\" font-size=\"11\" text-anchor=\"end\">" + format_number(std::round(yv * 1e4) / 1e4) + "</text>\n";
    }
    s += "<text x=\"" + num(f.left + f.width / 2) + "\" y=\"" + num(f.top + f.height + 34) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
    s += "<text x=\"16\" y=\"" + num(f.top + f.height / 2) + "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(f.top + f.height / 2) + ")\">" + escape(y_label) + "</text>\n";
    return s;
}

inline std::string legend_entry(const Frame& f, std::size_t i, const std::string& name) {
    const double y = f.top + 14 + 14.0 * static_cast<double>(i);
    const double x = f.left + f.width + 12;
    return "<line x1=\"" + num(x) + "\" y1=\"" + num(y - 4) + "\" x2=\"" + num(x + 18) + "\" y2=\"" + num(y - 4) +
           "\" stroke=\"" + palette(i) + "\" stroke-width=\"2\"/>\n<text x=\"" + num(x + 22) + "\" y=\"" + num(y) +
           "\" font-size=\"11\">" + escape(name) + "</text>\n";
}

}  // namespace svg_detail

/// SVG 1.1 document for the table's plot spec. Uses only the table cells.
inline std::string render_svg(const ResultTable& table) {
    using namespace svg_detail;
    const PlotSpec& p = table.plot();
    std::string body;
    double doc_height = 400;
    const double doc_width = 820;
    auto finite = [](double v) { return std::isfinite(v); };

    if (p.kind == PlotSpec::Kind::line) {
        const auto xs = table.column(p.x);
        Frame f;
        f.x0 = std::numeric_limits<double>::infinity();
        f.x1 = -f.x0;
        f.y0 = f.x0;
        f.y1 = -f.x0;
        for (double x : xs) if (finite(x)) { f.x0 = std::min(f.x0, x); f.x1 = std::max(f.x1, x); }
        for (const auto& name : p.series) {
            for (double y : table.column(name)) if (finite(y)) { f.y0 = std::min(f.y0, y); f.y1 = std::max(f.y1, y); }
        }
        if (!std::isfinite(f.x0)) { f.x0 = 0; f.x1 = 1; }
        if (!std::isfinite(f.y0)) { f.y0 = 0; f.y1 = 1; }
        widen(f.x0, f.x1);
        widen(f.y0, f.y1);
        body += axes(f, p.x_label.empty() ? p.x : p.x_label, p.y_label);
        for (std::size_t s = 0; s < p.series.size(); ++s) {
            const auto ys = table.column(p.series[s]);
            std::string pts;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (!finite(xs[i]) || !finite(ys[i])) continue;
                pts += num(f.px(xs[i])) + "," + num(f.py(ys[i])) + " ";
            }
            body += "<polyline fill=\"none\" stroke=\"" + std::string(palette(s)) + "\" stroke-width=\"1.5\" points=\"" +
                    pts + "\"/>\n";
            body += legend_entry(f, s, p.series[s]);
        }
    } else if (p.kind == PlotSpec::Kind::box) {
        const auto xs = table.column(p.x);
        const auto groups = table.column(p.group);
        const auto panels = p.panel.empty() ? std::vector<double>(xs.size(), 0.0) : table.column(p.panel);
        const auto q1 = table.column(p.q1);
        const auto med = table.column(p.median);
        const auto q3 = table.column(p.q3);
        const std::set<double> panel_ids(panels.begin(), panels.end());
        const std::set<double> group_ids(groups.begin(), groups.end());
        const std::set<double> x_ids(xs.begin(), xs.end());
        double step = std::numeric_limits<double>::infinity();
        for (auto it = x_ids.begin(); std::next(it) != x_ids.end() && it != x_ids.end(); ++it) step = std::min(step, *std::next(it) - *it);
        if (!std::isfinite(step)) step = 1.0;
        const double box_w = step * 0.8 / static_cast<double>(std::max<std::size_t>(group_ids.size(), 1));
        std::size_t panel_index = 0;
        for (double panel : panel_ids) {
            Frame f;
            f.top = 40 + 360.0 * static_cast<double>(panel_index);
            f.x0 = *x_ids.begin() - step / 2;
            f.x1 = *x_ids.rbegin() + step / 2;
            f.y0 = std::numeric_limits<double>::infinity();
            f.y1 = -f.y0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (panels[i] != panel) continue;
                f.y0 = std::min(f.y0, q1[i]);
                f.y1 = std::max(f.y1, q3[i]);
            }
            widen(f.y0, f.y1);
            body += axes(f, p.x_label.empty() ? p.x : p.x_label, p.y_label);
            if (!p.panel.empty()) {
                body += "<text x=\"" + num(f.left + f.width / 2) + "\" y=\"" + num(f.top - 8) +
                        "\" font-size=\"12\" text-anchor=\"middle\">" + escape(p.panel) + " = " + format_number(panel) +
                        "</text>\n";
            }
            std::size_t g = 0;
            for (double group : group_ids) {
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    if (panels[i] != panel || groups[i] != group) continue;
                    const double cx = xs[i] - step * 0.4 + box_w * (static_cast<double>(g) + 0.5);
                    const double xl = f.px(cx - box_w * 0.4);
                    const double xr = f.px(cx + box_w * 0.4);
                    body += "<rect x=\"" + num(xl) + "\" y=\"" + num(f.py(q3[i])) + "\" width=\"" + num(xr - xl) +
                            "\" height=\"" + num(std::max(0.5, f.py(q1[i]) - f.py(q3[i]))) + "\" fill=\"none\" stroke=\"" +
                            palette(g) + "\"/>\n";
                    body += "<line x1=\"" + num(xl) + "\" y1=\"" + num(f.py(med[i])) + "\" x2=\"" + num(xr) + "\" y2=\"" +
                            num(f.py(med[i])) + "\" stroke=\"" + palette(g) + "\" stroke-width=\"2\"/>\n";
                }
                const auto name = p.group_names.find(group);
                body += legend_entry(f, g, name != p.group_names.end() ? name->second : format_number(group));
                ++g;
            }
            ++panel_index;
        }
        doc_height = 40 + 360.0 * static_cast<double>(std::max<std::size_t>(panel_ids.size(), 1)) + 20;
    } else {
        const auto xs = table.column(p.x);
        const auto ys = table.column(p.y);
        const auto vs = table.column(p.value);
        Frame f;
        const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
        const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
        double vlo = std::numeric_limits<double>::infinity(), vhi = -vlo;
        for (double v : vs) if (finite(v)) { vlo = std::min(vlo, v); vhi = std::max(vhi, v); }
        if (!std::isfinite(vlo)) { vlo = 0; vhi = 1; }
        widen(vlo, vhi);
        const std::set<double> xu(xs.begin(), xs.end()), yu(ys.begin(), ys.end());
        const double cw = xu.size() > 1 ? (*xmax - *xmin) / static_cast<double>(xu.size() - 1) : 1.0;
        const double ch = yu.size() > 1 ? (*ymax - *ymin) / static_cast<double>(yu.size() - 1) : 1.0;
        f.x0 = *xmin - cw / 2;
        f.x1 = *xmax + cw / 2;
        f.y0 = *ymin - ch / 2;
        f.y1 = *ymax + ch / 2;
        f.width = f.height = 400;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double t = finite(vs[i]) ? (vs[i] - vlo) / (vhi - vlo) : 0.0;
            const int level = static_cast<int>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
            char color[16];
            std::snprintf(color, sizeof color, "#%02x%02x%02x", level, level / 2, 255 - level);
            const double x = f.px(xs[i] - cw / 2), y = f.py(ys[i] + ch / 2);
            body += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(f.px(xs[i] + cw / 2) - x + 0.3) +
                    "\" height=\"" + num(f.py(ys[i] - ch / 2) - y + 0.3) + "\" fill=\"" + color + "\"/>\n";
        }
        body += axes(f, p.x_label.empty() ? p.x : p.x_label, p.y_label.empty() ? p.y : p.y_label);
        body += "<text x=\"" + num(f.left + f.width + 12) + "\" y=\"" + num(f.top + 12) + "\" font-size=\"11\">" +
                escape(p.value) + ": " + format_number(vlo) + " (blue) .. " + format_number(vhi) + " (red)</text>\n";
        doc_height = 520;
    }

    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(doc_width) + "\" height=\"" +
           num(doc_height) + "\" viewBox=\"0 0 " + num(doc_width) + " " + num(doc_height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
    svg += "<text x=\"" + num(doc_width / 2) + "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">" +
           escape(table.title()) + "</text>\n";
    svg += body;
    svg += "</svg>\n";
    return svg;
}

/// Writes `<stem>.csv` and `<stem>.svg` under `dir`; returns the CSV path.
inline std::filesystem::path write_table(const ResultTable& table, const std::filesystem::path& dir,
                                         const std::string& stem, bool with_svg = true) {
    std::filesystem::create_directories(dir);
    const auto csv_path = dir / (stem + ".csv");
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw NumericError("cannot write " + csv_path.string());
        out << table.to_csv();
    }
    if (with_svg) {
        std::ofstream out(dir / (stem + ".svg"), std::ios::binary);
        if (!out) throw NumericError("cannot write " + (dir / (stem + ".svg")).string());
        out << render_svg(table);
    }
    return csv_path;
}

}  // namespace covert::harness
