#include "stabscore/figures.h"

#include <algorithm>
#include <cmath>
#include <string_view>

#include "fmt/format.h"
#include "stabscore/dataset_io.h"
#include "stabscore/error.h"
#include "stabscore/format.h"
#include "stabscore/stats.h"

namespace stabscore {
namespace {

/*
 Layout (SVG origin top-left, y grows downward):

   +------------------------------------------+
   |               title (kTop)               |
   |  y   +----------------------------+      |
   | axis |          plot area         | kRight
   | kLeft|                            |      |
   |      +----------------------------+      |
   |               x axis (kBottom)           |
   +------------------------------------------+
*/
constexpr double kLeft = 90.0;
constexpr double kRight = 40.0;
constexpr double kTop = 60.0;
constexpr double kBottom = 80.0;
constexpr double kPlotW = kFigureWidth - kLeft - kRight;
constexpr double kPlotH = kFigureHeight - kTop - kBottom;

constexpr std::string_view kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                         "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string CommentSafe(std::string_view s) {
  std::string out(s);
  for (std::size_t pos = out.find("--"); pos != std::string::npos;
       pos = out.find("--", pos)) {
    out.replace(pos, 2, "- -");
  }
  return out;
}

std::string Num(double v) { return fmt::format("{:.2f}", v); }

// Linear axis with 1-2-5 tick spacing.
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.2;

  static Axis Fit(double min_value, double max_value) {
    if (!(max_value > min_value)) {
      const double pad = std::max(0.05, std::fabs(min_value) * 0.1);
      min_value -= pad;
      max_value += pad;
    }
    const double raw = (max_value - min_value) / 5.0;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    const double ratio = raw / magnitude;
    double nice = 10.0;
    if (ratio <= 1.0) {
      nice = 1.0;
    } else if (ratio <= 2.0) {
      nice = 2.0;
    } else if (ratio <= 5.0) {
      nice = 5.0;
    }
    Axis axis;
    axis.step = nice * magnitude;
    axis.lo = std::floor(min_value / axis.step) * axis.step;
    axis.hi = std::ceil(max_value / axis.step) * axis.step;
    return axis;
  }

  int Decimals() const {
    return std::max(0, static_cast<int>(-std::floor(std::log10(step) + 1e-9)));
  }
  std::size_t TickCount() const {
    return static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  }
  double Tick(std::size_t i) const { return lo + static_cast<double>(i) * step; }
};

double MapX(const Axis& a, double v) {
  return kLeft + (v - a.lo) / (a.hi - a.lo) * kPlotW;
}
double MapY(const Axis& a, double v) {
  return kTop + kPlotH - (v - a.lo) / (a.hi - a.lo) * kPlotH;
}

class SvgDoc {
 public:
  SvgDoc(std::string_view title, std::string_view data) {
    body_ += fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\">\n",
        kFigureWidth, kFigureHeight);
    body_ += fmt::format("<!-- data\n{}-->\n", CommentSafe(data));
    body_ += fmt::format(
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        kFigureWidth, kFigureHeight);
    Text(kFigureWidth / 2, kTop / 2 + 6, title, "middle", 18);
  }

  void Line(double x1, double y1, double x2, double y2, std::string_view stroke,
            double width = 1.0, std::string_view dash = {}) {
    body_ += fmt::format(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" "
        "stroke-width=\"{}\"{}/>\n",
        Num(x1), Num(y1), Num(x2), Num(y2), stroke, width,
        dash.empty() ? std::string() : fmt::format(" stroke-dasharray=\"{}\"", dash));
  }

  void Rect(double x, double y, double w, double h, std::string_view fill,
            std::string_view stroke = "black") {
    body_ += fmt::format(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" "
        "stroke=\"{}\"/>\n",
        Num(x), Num(y), Num(w), Num(h), fill, stroke);
  }

  void Circle(double cx, double cy, double r, std::string_view fill,
              std::string_view stroke = "none") {
    body_ += fmt::format(
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"{}\"/>\n",
        Num(cx), Num(cy), r, fill, stroke);
  }

  void Text(double x, double y, std::string_view text, std::string_view anchor,
            int size = 12, double rotate = 0.0) {
    const std::string transform =
        rotate == 0.0 ? std::string()
                      : fmt::format(" transform=\"rotate({} {} {})\"", rotate, Num(x),
                                    Num(y));
    body_ += fmt::format(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" "
        "text-anchor=\"{}\"{}>{}</text>\n",
        Num(x), Num(y), size, anchor, transform, XmlEscape(text));
  }

  void YAxis(const Axis& axis, std::string_view label) {
    Line(kLeft, kTop, kLeft, kTop + kPlotH, "black");
    for (std::size_t i = 0; i < axis.TickCount(); ++i) {
      const double y = MapY(axis, axis.Tick(i));
      Line(kLeft - 5, y, kLeft, y, "black");
      Line(kLeft, y, kLeft + kPlotW, y, "#dddddd");
      Text(kLeft - 8, y + 4, FormatFixed(axis.Tick(i), axis.Decimals()), "end");
    }
    Text(25, kTop + kPlotH / 2, label, "middle", 14, -90);
  }

  void XAxis(const Axis& axis, std::string_view label) {
    Line(kLeft, kTop + kPlotH, kLeft + kPlotW, kTop + kPlotH, "black");
    for (std::size_t i = 0; i < axis.TickCount(); ++i) {
      const double x = MapX(axis, axis.Tick(i));
      Line(x, kTop + kPlotH, x, kTop + kPlotH + 5, "black");
      Text(x, kTop + kPlotH + 20, FormatFixed(axis.Tick(i), axis.Decimals()), "middle");
    }
    XLabel(label);
  }

  void XLabel(std::string_view label) {
    Text(kLeft + kPlotW / 2, kFigureHeight - 25, label, "middle", 14);
  }

  void Legend(const std::vector<std::string>& models) {
    double y = kTop + 10;
    for (std::size_t m = 0; m < models.size(); ++m) {
      const double x = kLeft + kPlotW - 140;
      Circle(x, y - 4, 5, kPalette[m % std::size(kPalette)]);
      Text(x + 10, y, models[m], "start");
      y += 18;
    }
  }

  std::string Finish() && {
    body_ += "</svg>\n";
    return std::move(body_);
  }

 private:
  std::string body_;
};

std::vector<std::string> ModelOrder(std::span<const ScoreRecord> records) {
  std::vector<std::string> models;
  for (const ScoreRecord& r : records) models.push_back(r.observation.model_id);
  std::sort(models.begin(), models.end());
  models.erase(std::unique(models.begin(), models.end()), models.end());
  return models;
}

std::size_t ModelIndex(const std::vector<std::string>& models, const std::string& id) {
  return static_cast<std::size_t>(std::lower_bound(models.begin(), models.end(), id) -
                                  models.begin());
}

void GainByModel(std::span<const ModelAggregate> aggregates,
                 std::map<std::string, std::string>& files) {
  std::string data = "model,n,mean_gain,sd_gain\n";
  double lo = 0.0;
  double hi = 0.0;
  for (const ModelAggregate& a : aggregates) {
    const double sd = a.sd_gain.value_or(0.0);
    data += fmt::format("{},{},{},{}\n", CsvEscape(a.model_id), a.n,
                        FormatExact(a.mean_gain),
                        a.sd_gain ? FormatExact(*a.sd_gain) : std::string("NA"));
    lo = std::min(lo, a.mean_gain - sd);
    hi = std::max(hi, a.mean_gain + sd);
  }
  const Axis axis = Axis::Fit(lo, hi);
  SvgDoc svg("Mean stability gain by model (error bars: 1 SD)", data);
  svg.YAxis(axis, "Mean gain (E* - E)");
  svg.XLabel("Model");
  svg.Line(kLeft, MapY(axis, 0.0), kLeft + kPlotW, MapY(axis, 0.0), "black");

  const double slot = kPlotW / static_cast<double>(aggregates.size());
  for (std::size_t i = 0; i < aggregates.size(); ++i) {
    const ModelAggregate& a = aggregates[i];
    const double center = kLeft + slot * (static_cast<double>(i) + 0.5);
    const double width = slot * 0.6;
    const double y0 = MapY(axis, 0.0);
    const double y1 = MapY(axis, a.mean_gain);
    svg.Rect(center - width / 2, std::min(y0, y1), width, std::fabs(y1 - y0),
             kPalette[i % std::size(kPalette)]);
    if (a.sd_gain) {
      const double top = MapY(axis, a.mean_gain + *a.sd_gain);
      const double bottom = MapY(axis, a.mean_gain - *a.sd_gain);
      svg.Line(center, top, center, bottom, "black", 1.5);
      svg.Line(center - 8, top, center + 8, top, "black", 1.5);
      svg.Line(center - 8, bottom, center + 8, bottom, "black", 1.5);
    }
    svg.Text(center, kTop + kPlotH + 20, a.model_id, "middle");
  }
  files["fig1_gain_by_model.csv"] = data;
  files["fig1_gain_by_model.svg"] = std::move(svg).Finish();
}

void Scatter(std::span<const ScoreRecord> records, bool entropy_on_x,
             std::map<std::string, std::string>& files) {
  const std::string name = entropy_on_x ? "fig2_entropy_vs_estar" : "fig3_e_vs_estar";
  const std::vector<std::string> models = ModelOrder(records);
  auto x_of = [&](const ScoreRecord& r) {
    return entropy_on_x ? r.observation.entropy : r.reduced;
  };

  std::string data = entropy_on_x ? "model,scenario,entropy,generalized\n"
                                  : "model,scenario,reduced,generalized\n";
  double xmin = x_of(records.front());
  double xmax = xmin;
  double ymin = records.front().generalized;
  double ymax = ymin;
  for (const ScoreRecord& r : records) {
    data += fmt::format("{},{},{},{}\n", CsvEscape(r.observation.model_id),
                        CsvEscape(r.observation.scenario_id), FormatExact(x_of(r)),
                        FormatExact(r.generalized));
    xmin = std::min(xmin, x_of(r));
    xmax = std::max(xmax, x_of(r));
    ymin = std::min(ymin, r.generalized);
    ymax = std::max(ymax, r.generalized);
  }
  Axis xaxis;
  Axis yaxis;
  if (entropy_on_x) {
    xaxis = Axis::Fit(xmin, xmax);
    yaxis = Axis::Fit(ymin, ymax);
  } else {
    // Shared scale so the identity line is the true diagonal of equality.
    xaxis = yaxis = Axis::Fit(std::min(xmin, ymin), std::max(xmax, ymax));
  }

  SvgDoc svg(entropy_on_x ? "Entropy S against generalized score E*"
                          : "Reduced score E against generalized score E*",
             data);
  svg.YAxis(yaxis, "Generalized score E*");
  svg.XAxis(xaxis, entropy_on_x ? "Entropy S" : "Reduced score E");
  if (!entropy_on_x) {
    svg.Line(MapX(xaxis, xaxis.lo), MapY(yaxis, xaxis.lo), MapX(xaxis, xaxis.hi),
             MapY(yaxis, xaxis.hi), "#555555", 1.5, "6,4");
  }
  for (const ScoreRecord& r : records) {
    const std::size_t m = ModelIndex(models, r.observation.model_id);
    svg.Circle(MapX(xaxis, x_of(r)), MapY(yaxis, r.generalized), 4,
               kPalette[m % std::size(kPalette)], "black");
  }
  svg.Legend(models);
  files[name + ".csv"] = data;
  files[name + ".svg"] = std::move(svg).Finish();
}

void Distributions(std::span<const ScoreRecord> records,
                   std::map<std::string, std::string>& files) {
  std::vector<double> reduced;
  std::vector<double> generalized;
  for (const ScoreRecord& r : records) {
    reduced.push_back(r.reduced);
    generalized.push_back(r.generalized);
  }
  const BoxStats boxes[2] = {ComputeBoxStats(reduced), ComputeBoxStats(generalized)};
  const char* names[2] = {"E", "E*"};

  std::string data = "series,n,q1,median,q3,whisker_low,whisker_high,outliers\n";
  double lo = boxes[0].whisker_low;
  double hi = boxes[0].whisker_high;
  for (int b = 0; b < 2; ++b) {
    std::string outliers;
    for (double v : boxes[b].outliers) {
      if (!outliers.empty()) outliers += ';';
      outliers += FormatExact(v);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    lo = std::min(lo, boxes[b].whisker_low);
    hi = std::max(hi, boxes[b].whisker_high);
    data += fmt::format("{},{},{},{},{},{},{},{}\n", names[b], records.size(),
                        FormatExact(boxes[b].q1), FormatExact(boxes[b].median),
                        FormatExact(boxes[b].q3), FormatExact(boxes[b].whisker_low),
                        FormatExact(boxes[b].whisker_high), outliers);
  }
  const Axis axis = Axis::Fit(lo, hi);
  SvgDoc svg("Distribution of reduced (E) and generalized (E*) scores", data);
  svg.YAxis(axis, "Score");
  svg.XLabel("Formulation");
  const double slot = kPlotW / 2.0;
  for (int b = 0; b < 2; ++b) {
    const BoxStats& box = boxes[b];
    const double center = kLeft + slot * (b + 0.5);
    const double half = slot * 0.2;
    const std::string_view color = kPalette[b];
    svg.Line(center, MapY(axis, box.whisker_low), center, MapY(axis, box.q1), "black");
    svg.Line(center, MapY(axis, box.q3), center, MapY(axis, box.whisker_high), "black");
    svg.Line(center - half / 2, MapY(axis, box.whisker_low), center + half / 2,
             MapY(axis, box.whisker_low), "black");
    svg.Line(center - half / 2, MapY(axis, box.whisker_high), center + half / 2,
             MapY(axis, box.whisker_high), "black");
    svg.Rect(center - half, MapY(axis, box.q3), 2 * half,
             MapY(axis, box.q1) - MapY(axis, box.q3), color);
    svg.Line(center - half, MapY(axis, box.median), center + half,
             MapY(axis, box.median), "black", 2.0);
    for (double v : box.outliers) svg.Circle(center, MapY(axis, v), 3, "none", "black");
    svg.Text(center, kTop + kPlotH + 20, names[b], "middle");
  }
  files["fig4_distributions.csv"] = data;
  files["fig4_distributions.svg"] = std::move(svg).Finish();
}

}  // namespace

BoxStats ComputeBoxStats(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptySample, "box plot of an empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  BoxStats box;
  box.q1 = SortedQuantile(sorted, 0.25);
  box.median = SortedQuantile(sorted, 0.5);
  box.q3 = SortedQuantile(sorted, 0.75);
  const double iqr = box.q3 - box.q1;
  const double low_fence = box.q1 - 1.5 * iqr;
  const double high_fence = box.q3 + 1.5 * iqr;
  box.whisker_low = box.q1;
  box.whisker_high = box.q3;
  for (double v : sorted) {
    if (v < low_fence || v > high_fence) {
      box.outliers.push_back(v);
    } else {
      box.whisker_low = std::min(box.whisker_low, v);
      box.whisker_high = std::max(box.whisker_high, v);
    }
  }
  return box;
}

std::map<std::string, std::string> EmitFigures(
    std::span<const ScoreRecord> records,
    std::span<const ModelAggregate> aggregates) {
  if (records.empty() || aggregates.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no records to plot");
  }
  std::map<std::string, std::string> files;
  GainByModel(aggregates, files);
  Scatter(records, /*entropy_on_x=*/true, files);
  Scatter(records, /*entropy_on_x=*/false, files);
  Distributions(records, files);
  return files;
}

}  // namespace stabscore
