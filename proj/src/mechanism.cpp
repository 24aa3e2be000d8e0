// Copyright 2026 The Spectrum Auction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spectrum/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spectrum/rng.hpp"

namespace spectrum {

namespace {

void validate_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
}

void validate_bids(std::span<const double> bids, std::size_t n) {
  if (bids.size() != n) {
    throw InputError("expected " + std::to_string(n) + " bids, got " +
                     std::to_string(bids.size()));
  }
  for (double b : bids) {
    if (!(std::isfinite(b) && b >= 0.0)) throw InputError("bids must be finite and nonnegative");
  }
}

}  // namespace

unsigned ceil_log2(std::size_t n) {
  if (n == 0) throw InputError("ceil_log2 needs n >= 1");
  unsigned c = 0;
  while ((std::size_t{1} << c) < n) ++c;
  return c;
}

unsigned max_price_exponent(std::size_t n) { return ceil_log2(n) + 1; }

RandomTape draw_tape(std::uint64_t seed, double epsilon, std::size_t bidder_count,
                     std::size_t ladder_n) {
  validate_epsilon(epsilon);
  Engine engine(seed);
  RandomTape tape;
  tape.seed = seed;
  tape.secprice = bernoulli(engine, epsilon);
  tape.stat.resize(bidder_count);
  for (std::size_t i = 0; i < bidder_count; ++i) tape.stat[i] = bernoulli(engine, epsilon);
  tape.price_exponent =
      static_cast<unsigned>(uniform_below(engine, max_price_exponent(std::max<std::size_t>(ladder_n, 1)) + 1));
  return tape;
}

double sample_price(double best_sampled_bid, std::size_t n, unsigned exponent) {
  if (n == 0) throw InputError("sample_price needs n >= 1");
  if (exponent > max_price_exponent(n)) {
    throw InputError("price exponent " + std::to_string(exponent) + " out of range for n = " +
                     std::to_string(n));
  }
  if (!(std::isfinite(best_sampled_bid) && best_sampled_bid >= 0.0)) {
    throw InputError("sampled bid must be finite and nonnegative");
  }
  return std::ldexp(best_sampled_bid, -static_cast<int>(exponent));
}

VickreyResult vickrey(std::span<const double> bids, std::span<const BidderId> participants) {
  if (participants.empty()) throw InputError("Vickrey auction needs at least one bidder");
  VickreyResult result{participants.front(), 0.0};
  for (BidderId i : participants) {
    if (i >= bids.size()) throw InputError("Vickrey participant has no bid");
    if (bids[i] > bids[result.winner]) result.winner = i;
  }
  for (BidderId i : participants) {
    if (i != result.winner) result.payment = std::max(result.payment, bids[i]);
  }
  return result;
}

VickreyResult vickrey(std::span<const double> bids) {
  std::vector<BidderId> everyone(bids.size());
  for (BidderId i = 0; i < everyone.size(); ++i) everyone[i] = i;
  return vickrey(bids, everyone);
}

std::vector<BidderId> prefilter(const Instance& instance) {
  std::vector<BidderId> keep;
  for (BidderId i = 0; i < instance.bidder_count(); ++i) {
    if (instance.kind() == EnvironmentKind::kSinrPowerControl ||
        instance.kind() == EnvironmentKind::kConflictGraph ||
        singleton_allocation(instance, i).has_value()) {
      keep.push_back(i);
    }
  }
  return keep;
}

double Outcome::revenue() const {
  double total = 0.0;
  for (double p : payments) total += p;
  return total;
}

double Outcome::welfare(std::span<const double> values) const {
  if (values.size() != payments.size()) throw InputError("value profile size mismatch");
  double total = 0.0;
  for (BidderId i : winners()) total += values[i];
  return total;
}

// --- Mechanism ------------------------------------------------------------------

Mechanism::Mechanism(const Packer& packer, double epsilon)
    : packer_(&packer), epsilon_(epsilon) {
  validate_epsilon(epsilon);
  const Instance& inst = packer.instance();
  singletons_.resize(inst.bidder_count());
  for (BidderId i = 0; i < inst.bidder_count(); ++i) {
    singletons_[i] = singleton_allocation(inst, i);
    (singletons_[i] ? surviving_ : removed_).push_back(i);
  }
}

RandomTape Mechanism::draw(std::uint64_t seed) const {
  return draw_tape(seed, epsilon_, instance().bidder_count(), surviving_.size());
}

Outcome Mechanism::run(std::span<const double> bids, const RandomTape& tape) const {
  const Instance& inst = instance();
  const std::size_t n = inst.bidder_count();
  validate_bids(bids, n);
  if (tape.stat.size() != n) throw InputError("random tape does not match the bidder count");
  const std::size_t ladder_n = std::max<std::size_t>(surviving_.size(), 1);
  if (tape.price_exponent > max_price_exponent(ladder_n)) {
    throw InputError("random tape price exponent out of range");
  }

  Outcome out;
  out.allocation = Allocation::empty(inst.channels());
  out.payments.assign(n, 0.0);
  out.tape = tape;
  out.removed = removed_;
  if (surviving_.empty()) return out;

  if (tape.secprice) {
    const VickreyResult v = vickrey(bids, surviving_);
    out.allocation = *singletons_[v.winner];
    out.payments[v.winner] = v.payment;
    return out;
  }

  double best_sampled = 0.0;
  for (BidderId i : surviving_) {
    if (tape.stat[i]) best_sampled = std::max(best_sampled, bids[i]);
  }
  out.price = sample_price(best_sampled, ladder_n, tape.price_exponent);

  std::vector<BidderId> candidates;
  for (BidderId i : surviving_) {
    if (!tape.stat[i] && bids[i] >= out.price) candidates.push_back(i);
  }
  out.allocation = packer_->pack(candidates);
  for (BidderId w : out.allocation.winners()) {
    if (!std::binary_search(candidates.begin(), candidates.end(), w)) {
      throw std::logic_error("packer '" + packer_->name() + "' selected a non-candidate");
    }
    out.payments[w] = out.price;
  }
  return out;
}

Outcome run_mechanism(const Instance& instance, std::span<const double> bids, double epsilon,
                      const Packer& packer, const RandomTape& tape) {
  if (!(packer.instance() == instance)) {
    throw InputError("packer '" + packer.name() + "' is bound to a different instance");
  }
  return Mechanism(packer, epsilon).run(bids, tape);
}

Outcome run_mechanism(const Instance& instance, std::span<const double> bids, double epsilon,
                      const Packer& packer, std::uint64_t seed) {
  if (!(packer.instance() == instance)) {
    throw InputError("packer '" + packer.name() + "' is bound to a different instance");
  }
  const Mechanism mechanism(packer, epsilon);
  return mechanism.run(bids, mechanism.draw(seed));
}

std::vector<double> utility(const Outcome& outcome, std::span<const double> true_values) {
  if (true_values.size() != outcome.payments.size()) {
    throw InputError("value profile size mismatch");
  }
  std::vector<double> u(true_values.size(), 0.0);
  for (BidderId i : outcome.winners()) u[i] = true_values[i] - outcome.payments[i];
  return u;
}

}  // namespace spectrum
