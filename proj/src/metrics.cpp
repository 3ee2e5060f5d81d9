#include "fairfold/metrics.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "fairfold/csv.hpp"

namespace fairfold {

namespace {

std::pair<std::size_t, std::size_t> class_totals(const ScoredPredictions& predictions) {
    std::size_t positives = 0;
    for (const auto& pair : predictions.pairs) {
        if (pair.positive) ++positives;
    }
    return {positives, predictions.pairs.size() - positives};
}

void require_both(const ScoredPredictions& predictions) {
    const auto [positives, negatives] = class_totals(predictions);
    if (positives == 0 || negatives == 0) {
        raise(Errc::OneClassOnly, "fold holds a single class; the ranking metric is undefined");
    }
}

}  // namespace

RocCurve roc_curve(const ScoredPredictions& predictions) {
    require_both(predictions);
    const auto [n_pos, n_neg] = class_totals(predictions);

    std::vector<ScoredPrediction> sorted = predictions.pairs;
    std::sort(sorted.begin(), sorted.end(),
              [](const ScoredPrediction& a, const ScoredPrediction& b) {
                  return a.score > b.score;
              });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    curve.thresholds.push_back(std::numeric_limits<double>::infinity());

    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double score = sorted[i].score;
        while (i < sorted.size() && sorted[i].score == score) {
            if (sorted[i].positive) ++tp; else ++fp;
            ++i;
        }
        curve.points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                                static_cast<double>(tp) / static_cast<double>(n_pos)});
        curve.thresholds.push_back(score);
    }
    return curve;
}

double auc(const ScoredPredictions& predictions) {
    const RocCurve curve = roc_curve(predictions);
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    return area;
}

double auc_rank(const ScoredPredictions& predictions) {
    require_both(predictions);
    const auto [n_pos, n_neg] = class_totals(predictions);

    std::vector<ScoredPrediction> sorted = predictions.pairs;
    std::sort(sorted.begin(), sorted.end(),
              [](const ScoredPrediction& a, const ScoredPrediction& b) {
                  return a.score < b.score;
              });

    // Walk tie groups upward; every positive outranks the negatives seen so
    // far and half-credits the negatives tied with it.
    double numerator = 0.0;
    std::size_t negatives_below = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double score = sorted[i].score;
        std::size_t group_pos = 0;
        std::size_t group_neg = 0;
        while (i < sorted.size() && sorted[i].score == score) {
            if (sorted[i].positive) ++group_pos; else ++group_neg;
            ++i;
        }
        numerator += static_cast<double>(group_pos) *
                     (static_cast<double>(negatives_below) + 0.5 * static_cast<double>(group_neg));
        negatives_below += group_neg;
    }
    return numerator / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double f1_at_half(const ScoredPredictions& predictions) {
    if (predictions.pairs.empty()) raise(Errc::InvalidValue, "no predictions to score");
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    for (const auto& pair : predictions.pairs) {
        const bool predicted = pair.score >= 0.5;
        if (predicted && pair.positive) ++tp;
        else if (predicted && !pair.positive) ++fp;
        else if (!predicted && pair.positive) ++fn;
    }
    const std::size_t denominator = 2 * tp + fp + fn;
    if (denominator == 0) return 1.0;  // nothing positive anywhere, nothing wrong
    return 2.0 * static_cast<double>(tp) / static_cast<double>(denominator);
}

void write_roc_csv(const RocCurve& curve, std::ostream& out) {
    out << "threshold,fpr,tpr\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        out << format_double(curve.thresholds[i]) << ',' << format_double(curve.points[i].fpr)
            << ',' << format_double(curve.points[i].tpr) << '\n';
    }
}

std::string roc_svg(const RocCurve& curve, const std::string& title) {
    constexpr double kOrigin = 50.0;
    constexpr double kSize = 400.0;
    const auto px = [](double fpr) { return kOrigin + fpr * kSize; };
    const auto py = [](double tpr) { return kOrigin + kSize - tpr * kSize; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"510\" "
           "viewBox=\"0 0 500 510\">\n";
    svg << "<rect width=\"500\" height=\"510\" fill=\"white\"/>\n";
    svg << "<text x=\"250\" y=\"28\" font-family=\"sans-serif\" font-size=\"14\" "
           "text-anchor=\"middle\">"
        << title << "</text>\n";
    svg << "<rect x=\"" << format_fixed(kOrigin, 2) << "\" y=\"" << format_fixed(kOrigin, 2)
        << "\" width=\"" << format_fixed(kSize, 2) << "\" height=\"" << format_fixed(kSize, 2)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double value = 0.25 * tick;
        svg << "<text x=\"" << format_fixed(px(value), 2) << "\" y=\""
            << format_fixed(py(0) + 18, 2)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
            << format_fixed(value, 2) << "</text>\n";
        svg << "<text x=\"" << format_fixed(kOrigin - 8, 2) << "\" y=\""
            << format_fixed(py(value) + 3, 2)
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
            << format_fixed(value, 2) << "</text>\n";
    }
    svg << "<line x1=\"" << format_fixed(px(0), 2) << "\" y1=\"" << format_fixed(py(0), 2)
        << "\" x2=\"" << format_fixed(px(1), 2) << "\" y2=\"" << format_fixed(py(1), 2)
        << "\" stroke=\"#aaaaaa\" stroke-dasharray=\"3 3\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        if (i > 0) svg << ' ';
        svg << format_fixed(px(curve.points[i].fpr), 2) << ','
            << format_fixed(py(curve.points[i].tpr), 2);
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

}  // namespace fairfold
