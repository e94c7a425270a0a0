#include "tonnetz/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>

namespace tonnetz::svg {

namespace {

constexpr const char* kFont = "sans-serif";

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string header(int width, int height)
{
    return fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
                       "viewBox=\"0 0 {0} {1}\" font-family=\"{2}\" font-size=\"12\">\n"
                       "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
                       width, height, kFont);
}

/// Upper end of a plotted value range; never zero.
double axis_limit(double max_value) { return max_value > 0.0 ? max_value * 1.1 : 1.0; }

std::string tick_label(double x) { return fmt::format("{:.3g}", x); }

} // namespace

std::string render_diagram(const io::LabeledDiagram& labeled)
{
    constexpr int size = 480, margin = 56;
    constexpr double span = size - 2 * margin;
    const auto& d = labeled.diagram;

    double hi = 0.0;
    for (const auto& p : d.proper)
        hi = std::max({hi, p.birth, p.death});
    for (double u : d.essential)
        hi = std::max(hi, u);
    double lo = 0.0;
    for (const auto& p : d.proper)
        lo = std::min(lo, p.birth);
    for (double u : d.essential)
        lo = std::min(lo, u);
    hi = axis_limit(hi);

    auto px = [&](double u) { return margin + (u - lo) / (hi - lo) * span; };
    auto py = [&](double v) { return size - margin - (v - lo) / (hi - lo) * span; };

    std::string out = header(size, size);
    out += fmt::format("<text class=\"title\" x=\"{}\" y=\"24\" text-anchor=\"middle\">D{} {}</text>\n", size / 2,
                       d.degree, escape(labeled.profile_ref));
    out += fmt::format("<line class=\"axis\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", margin,
                       size - margin, size - margin);
    out += fmt::format("<line class=\"axis\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", margin,
                       size - margin, margin);
    for (int i = 0; i <= 4; ++i) {
        const double value = lo + (hi - lo) * i / 4.0;
        out += fmt::format("<text class=\"tick\" x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(value),
                           size - margin + 18, tick_label(value));
        out += fmt::format("<text class=\"tick\" x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", margin - 6,
                           py(value) + 4, tick_label(value));
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">birth</text>\n", size / 2, size - 16);
    out += fmt::format("<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">death</text>\n",
                       size / 2);
    out += fmt::format("<line class=\"diagonal\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                       "stroke=\"gray\"/>\n",
                       px(lo), py(lo), px(hi), py(hi));
    for (double u : d.essential)
        out += fmt::format("<line class=\"essential\" x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" "
                           "stroke=\"firebrick\" stroke-dasharray=\"6 3\"/>\n",
                           px(u), size - margin, margin);
    for (const auto& p : d.proper)
        out += fmt::format("<circle class=\"proper\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"steelblue\"/>\n",
                           px(p.birth), py(p.death));
    out += "</svg>\n";
    return out;
}

std::string render_dendrogram(const Dendrogram& dendrogram)
{
    dendrogram.validate();
    const std::size_t n = dendrogram.leaf_count();
    constexpr int width = 640, left = 160, right = 40, top = 40, row = 24;
    const int height = top + row * static_cast<int>(std::max<std::size_t>(n, 1)) + 56;

    double hmax = 0.0;
    for (const auto& m : dendrogram.merges)
        if (std::isfinite(m.height))
            hmax = std::max(hmax, m.height);
    hmax = axis_limit(hmax);
    auto px = [&](double h) { return left + std::min(h, hmax) / hmax * (width - left - right); };

    // Leaf rows in depth-first order.
    std::vector<double> y(n + dendrogram.merges.size(), 0.0);
    std::size_t next_row = 0;
    std::function<void(std::size_t)> place = [&](std::size_t c) {
        if (c < n) {
            y[c] = top + row * (static_cast<double>(next_row++) + 0.5);
            return;
        }
        const auto& m = dendrogram.merges[c - n];
        place(m.first);
        place(m.second);
        y[c] = (y[m.first] + y[m.second]) / 2.0;
    };
    if (n > 0)
        place(dendrogram.merges.empty() ? 0 : n + dendrogram.merges.size() - 1);

    auto node_height = [&](std::size_t c) { return c < n ? 0.0 : dendrogram.merges[c - n].height; };

    std::string out = header(width, height);
    for (std::size_t i = 0; i < n; ++i)
        out += fmt::format("<text class=\"leaf\" x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", left - 6,
                           y[i] + 4, escape(dendrogram.labels[i]));
    for (std::size_t k = 0; k < dendrogram.merges.size(); ++k) {
        const auto& m = dendrogram.merges[k];
        const double x = px(m.height);
        for (std::size_t child : {m.first, m.second})
            out += fmt::format("<line class=\"branch\" x1=\"{0:.2f}\" y1=\"{2:.2f}\" x2=\"{1:.2f}\" y2=\"{2:.2f}\" "
                               "stroke=\"black\"/>\n",
                               px(node_height(child)), x, y[child]);
        out += fmt::format("<line class=\"split\" x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" "
                           "stroke=\"black\"/>\n",
                           x, y[m.first], y[m.second]);
    }
    const int axis_y = height - 40;
    out += fmt::format("<line class=\"axis\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", left,
                       axis_y, width - right);
    for (int i = 0; i <= 4; ++i) {
        const double value = hmax * i / 4.0;
        out += fmt::format("<text class=\"tick\" x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(value),
                           axis_y + 18, tick_label(value));
    }
    out += "</svg>\n";
    return out;
}

} // namespace tonnetz::svg
