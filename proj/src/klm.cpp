#include "reducedkey/klm.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "reducedkey/errors.hpp"

namespace reducedkey::klm {

void Params::validate() const {
  auto probability = [](const char* name, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError(fmt::format("{} must lie in [0,1], got {}", name, v));
    }
  };
  auto duration = [](const char* name, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError(fmt::format("{} must be a non-negative time, got {}", name, v));
    }
  };
  if (!(n_avg >= 1.0) || !std::isfinite(n_avg)) {
    throw ValidationError(fmt::format("n_avg must be at least 1, got {}", n_avg));
  }
  duration("t_p", t_p);
  duration("t_per", t_per);
  duration("t_wait", t_wait);
  duration("t_ck", t_ck);
  probability("p_ck", p_ck);
  probability("p_error1", p_error1);
  probability("p_error2", p_error2);
}

Params default_params() { return Params{}; }

namespace {

void check_word_length(double x) {
  if (!(x >= 1.0) || !std::isfinite(x)) {
    throw ValidationError(fmt::format("word length must be at least 1, got {}", x));
  }
}

}  // namespace

double t_stem(const Params& p, double x) {
  p.validate();
  check_word_length(x);
  return x * (p.n_avg * p.t_p + p.t_per + (1.0 - p.p_ck) * p.t_wait) +
         (x - 1.0) * p.p_ck * p.t_ck;
}

double t_ipreti(const Params& p, double x) {
  p.validate();
  check_word_length(x);
  return x * (p.t_p + p.t_per) + (x - 1.0) * p.p_ck * p.t_ck +
         x * (p.p_error1 + p.p_error2) * (p.t_ck + p.t_p);
}

Improvement improvement(const Params& p, double x) {
  Improvement out;
  out.x = x;
  out.t_stem = t_stem(p, x);
  out.t_ipreti = t_ipreti(p, x);
  out.time_pct = (out.t_stem - out.t_ipreti) / out.t_stem;
  out.keystroke_stem = x * p.n_avg;
  // A second miss costs a third press.
  out.keystroke_ipreti = x * (1.0 + p.p_error1 + 2.0 * p.p_error2);
  out.keystroke_pct = (out.keystroke_stem - out.keystroke_ipreti) / out.keystroke_stem;
  return out;
}

std::string format_text(const Params& p, const Improvement& c) {
  const PublishedFigures pub;
  std::string out;
  out += fmt::format(
      "parameters: n={} T_P={} T_PER={} P_CK={} T_WAIT={} T_CK={} P_ERROR1={} P_ERROR2={}\n",
      p.n_avg, p.t_p, p.t_per, p.p_ck, p.t_wait, p.t_ck, p.p_error1, p.p_error2);
  out += fmt::format("word length X = {}\n\n", c.x);
  out += fmt::format("{:<24}{:>14}{:>18}\n", "quantity", "computed", "published (X=6)");
  auto line = [&out](const char* name, double computed, double published, const char* unit) {
    out += fmt::format("{:<24}{:>12.2f}{:<2}{:>16.2f}{:<2}\n", name, computed, unit, published,
                       unit);
  };
  line("T_STEM", c.t_stem, pub.t_stem, "ms");
  line("T_iPRETI", c.t_ipreti, pub.t_ipreti, "ms");
  line("time improvement", 100.0 * c.time_pct, 100.0 * pub.time_pct, "%");
  line("keystrokes STEM", c.keystroke_stem, pub.keystroke_stem, "");
  line("keystrokes iPRETI", c.keystroke_ipreti, pub.keystroke_ipreti, "");
  line("keystroke improvement", 100.0 * c.keystroke_pct, 100.0 * pub.keystroke_pct, "%");
  const auto at_defaults = improvement(default_params(), pub.x);
  out += fmt::format(
      "\nnote: the published figures are for the default parameters at X={}. Evaluating\n"
      "the two timing formulas with those parameters gives {:.1f} ms and {:.1f} ms.\n"
      "The formulas are evaluated as printed; the published column is for reference.\n",
      pub.x, at_defaults.t_stem, at_defaults.t_ipreti);
  return out;
}

std::string format_json(const Params& p, const Improvement& c) {
  using nlohmann::json;
  const PublishedFigures pub;
  json doc = {
      {"params",
       {{"n_avg", p.n_avg},
        {"t_p", p.t_p},
        {"t_per", p.t_per},
        {"p_ck", p.p_ck},
        {"t_wait", p.t_wait},
        {"t_ck", p.t_ck},
        {"p_error1", p.p_error1},
        {"p_error2", p.p_error2}}},
      {"computed",
       {{"x", c.x},
        {"t_stem_ms", c.t_stem},
        {"t_ipreti_ms", c.t_ipreti},
        {"time_improvement", c.time_pct},
        {"keystrokes_stem", c.keystroke_stem},
        {"keystrokes_ipreti", c.keystroke_ipreti},
        {"keystroke_improvement", c.keystroke_pct}}},
      {"published",
       {{"x", pub.x},
        {"t_stem_ms", pub.t_stem},
        {"t_ipreti_ms", pub.t_ipreti},
        {"time_improvement", pub.time_pct},
        {"keystrokes_stem", pub.keystroke_stem},
        {"keystrokes_ipreti", pub.keystroke_ipreti},
        {"keystroke_improvement", pub.keystroke_pct},
        {"note",
         "published times do not follow from the formulas with the published parameters; "
         "shown for reference"}}}};
  return doc.dump(1) + "\n";
}

}  // namespace reducedkey::klm
