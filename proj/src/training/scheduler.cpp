#include "trajgrid/training/scheduler.hpp"

#include <algorithm>
#include <string>

#include "trajgrid/core/error.hpp"

namespace trajgrid {

PlateauScheduler::PlateauScheduler(double learning_rate, int patience, double factor, double min_lr)
    : lr_(learning_rate), patience_(patience), factor_(factor), min_lr_(min_lr) {
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::config, "learning rate must be positive");
  if (patience < 1) throw Error(ErrorCode::config, "scheduler patience must be at least 1");
  if (!(factor > 0.0 && factor < 1.0)) throw Error(ErrorCode::config, "scheduler factor must be in (0, 1)");
}

bool PlateauScheduler::step(double loss) {
  if (loss < best_) {
    best_ = loss;
    bad_epochs_ = 0;
    return false;
  }
  if (++bad_epochs_ < patience_) return false;
  bad_epochs_ = 0;
  const double next = std::max(lr_ * factor_, min_lr_);
  const bool reduced = next < lr_;
  lr_ = std::min(lr_, next);
  return reduced;
}

}  // namespace trajgrid
