#pragma once

#include <limits>

namespace trajgrid {

/// Multiplies the learning rate by `factor` once the monitored loss has gone `patience`
/// consecutive epochs without a strict improvement over the best value seen; the counter
/// then restarts. The learning rate never increases.
class PlateauScheduler {
 public:
  explicit PlateauScheduler(double learning_rate, int patience = 4, double factor = 0.5, double min_lr = 0.0);

  /// Records one epoch; returns true when this epoch triggered a reduction.
  bool step(double loss);

  double learning_rate() const { return lr_; }
  double best() const { return best_; }
  int epochs_without_improvement() const { return bad_epochs_; }

 private:
  double lr_;
  int patience_;
  double factor_;
  double min_lr_;
  double best_ = std::numeric_limits<double>::infinity();
  int bad_epochs_ = 0;
};

}  // namespace trajgrid
