#include "fractalhisto/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "fractalhisto/errors.hpp"

namespace fractalhisto {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void export_function_csv(const SampledFunction& f, const std::filesystem::path& path) {
    std::string out = "t,f\n";
    out.reserve(f.values.size() * 44 + 4);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        out += format_full(f.grid(i));
        out += ',';
        out += format_full(f.values[i]);
        out += '\n';
    }
    write_text_file(path, out);
}

SampledFunction import_function_csv(const std::filesystem::path& path, InterpMode mode) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(in, line) || (line != "t,f" && line != "t,f\r")) {
        throw ValidationError("function CSV must start with header 't,f': " + path.string());
    }
    std::vector<double> ts;
    std::vector<double> vs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ValidationError("function CSV line " + std::to_string(lineno) +
                                  " has no comma: " + path.string());
        }
        try {
            ts.push_back(std::stod(line.substr(0, comma)));
            vs.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ValidationError("function CSV line " + std::to_string(lineno) +
                                  " is not numeric: " + path.string());
        }
    }
    if (ts.size() < 9) throw ValidationError("function CSV needs at least 9 grid rows (K >= 8)");

    SampledFunction f;
    f.lo = ts.front();
    f.hi = ts.back();
    f.values = std::move(vs);
    f.mode = mode;
    const double span = f.hi - f.lo;
    if (!(span > 0.0)) throw ValidationError("function CSV grid is not increasing");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (std::fabs(ts[i] - f.grid(i)) > 1e-9 * std::max(1.0, span)) {
            throw ValidationError("function CSV grid is not uniform at row " +
                                  std::to_string(i + 2));
        }
    }
    return f;
}

void export_cloud_csv(const PointCloud& cloud, const std::filesystem::path& path) {
    std::string out = "t,x\n";
    out.reserve(cloud.points.size() * 44 + 4);
    for (const Point& p : cloud.points) {
        out += format_full(p.t);
        out += ',';
        out += format_full(p.x);
        out += '\n';
    }
    write_text_file(path, out);
}

namespace {

std::string format_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string format_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

void emit_svg(const std::vector<SvgSeries>& series, const std::filesystem::path& path) {
    std::size_t total = 0;
    for (const auto& s : series) total += s.points.size();
    if (series.empty() || total == 0) throw ArgumentError("emit_svg needs at least one nonempty series");

    double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
    double xmin = tmin, xmax = -tmin;
    for (const auto& s : series) {
        for (const Point& p : s.points) {
            tmin = std::min(tmin, p.t);
            tmax = std::max(tmax, p.t);
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
        }
    }
    if (tmax == tmin) { tmax += 0.5; tmin -= 0.5; }
    if (xmax == xmin) { xmax += 0.5; xmin -= 0.5; }
    const double tpad = 0.05 * (tmax - tmin);
    const double xpad = 0.05 * (xmax - xmin);
    tmin -= tpad; tmax += tpad;
    xmin -= xpad; xmax += xpad;

    const double width = 860, height = 540;
    const double left = 70, right = 20, top = 20, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    auto sx = [&](double t) { return left + (t - tmin) / (tmax - tmin) * plot_w; };
    auto sy = [&](double x) { return top + (xmax - x) / (xmax - xmin) * plot_h; };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n<style>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        svg << ".s" << i << "{fill:" << palette[i % 5] << ";}\n";
    }
    svg << ".axis{stroke:#333;stroke-width:1;}\n.grid{stroke:#ddd;stroke-width:0.5;}\n"
        << "</style>\n<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double t = tmin + (tmax - tmin) * i / ticks;
        const double x = xmin + (xmax - xmin) * i / ticks;
        svg << "<line class=\"grid\" x1=\"" << format_coord(sx(t)) << "\" y1=\"" << format_coord(top)
            << "\" x2=\"" << format_coord(sx(t)) << "\" y2=\"" << format_coord(top + plot_h)
            << "\"/>\n";
        svg << "<line class=\"grid\" x1=\"" << format_coord(left) << "\" y1=\""
            << format_coord(sy(x)) << "\" x2=\"" << format_coord(left + plot_w) << "\" y2=\""
            << format_coord(sy(x)) << "\"/>\n";
        svg << "<text x=\"" << format_coord(sx(t)) << "\" y=\"" << format_coord(height - bottom + 18)
            << "\" text-anchor=\"middle\">" << format_tick(t) << "</text>\n";
        svg << "<text x=\"" << format_coord(left - 8) << "\" y=\"" << format_coord(sy(x) + 4)
            << "\" text-anchor=\"end\">" << format_tick(x) << "</text>\n";
    }
    svg << "<line class=\"axis\" x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
        << left + plot_w << "\" y2=\"" << top + plot_h << "\"/>\n";
    svg << "<line class=\"axis\" x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
        << "\" y2=\"" << top + plot_h << "\"/>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        svg << "<g class=\"s" << i << "\">\n";
        for (const Point& p : series[i].points) {
            svg << "<circle cx=\"" << format_coord(sx(p.t)) << "\" cy=\"" << format_coord(sy(p.x))
                << "\" r=\"1\"/>\n";
        }
        svg << "</g>\n";
        svg << "<text x=\"" << format_coord(left + 10 + 110.0 * static_cast<double>(i))
            << "\" y=\"" << format_coord(top + 14) << "\" class=\"s" << i << "\">"
            << series[i].label << "</text>\n";
    }
    svg << "</svg>\n";
    write_text_file(path, svg.str());
}

}  // namespace fractalhisto
