#pragma once
// Keystroke-level timing model for multi-tap (STEM) and predictive (iPRETI)
// entry of an X-letter word. Times are in milliseconds.

#include <string>

namespace reducedkey::klm {

struct Params {
  double n_avg = 2.0229;     // average STEM presses per letter
  double t_p = 165.0;        // key press
  double t_per = 500.0;      // perceive correct entry
  double p_ck = 0.89;        // next letter sits on a different key
  double t_wait = 1500.0;    // same-key timeout
  double t_ck = 215.0;       // move to another key
  double p_error1 = 0.045;   // first prediction wrong
  double p_error2 = 0.002;   // second prediction wrong

  // Throws ValidationError on probabilities outside [0,1], negative times or n_avg < 1.
  void validate() const;
};

Params default_params();

// X[n T_P + T_PER + (1 - P_CK) T_WAIT] + (X - 1) P_CK T_CK
double t_stem(const Params& p, double x);
// X[T_P + T_PER] + (X - 1) P_CK T_CK + X (P_ERROR1 + P_ERROR2)(T_CK + T_P)
double t_ipreti(const Params& p, double x);

struct Improvement {
  double x = 0.0;
  double t_stem = 0.0;
  double t_ipreti = 0.0;
  double time_pct = 0.0;          // (t_stem - t_ipreti) / t_stem, as a fraction
  double keystroke_stem = 0.0;    // X n
  double keystroke_ipreti = 0.0;  // X (1 + p1 + 2 p2)
  double keystroke_pct = 0.0;
};

Improvement improvement(const Params& p, double x);

// Figures published for the default parameters at X = 6.
struct PublishedFigures {
  double x = 6.0;
  double t_stem = 5695.8;
  double t_ipreti = 3590.5;
  double time_pct = 0.3472;
  double keystroke_stem = 12.13;
  double keystroke_ipreti = 6.39;
  double keystroke_pct = 0.4735;
};

std::string format_text(const Params& p, const Improvement& computed);
std::string format_json(const Params& p, const Improvement& computed);

}  // namespace reducedkey::klm
