#include "tablegrid/ga.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "tablegrid/error.hpp"
#include "tablegrid/parallel.hpp"
#include "tablegrid/simd/kernels.hpp"
#include "tablegrid/xycut.hpp"

namespace tablegrid {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

int present_count(const std::vector<int>& v) {
  return static_cast<int>(std::count_if(v.begin(), v.end(), [](int e) { return e > 0; }));
}

void compact(std::vector<int>& v) {
  const auto size = v.size();
  std::erase_if(v, [](int e) { return e <= 0; });
  v.resize(size, 0);
}

int gaussian_step(std::normal_distribution<double>& step, std::mt19937_64& rng) {
  const double raw = step(rng);
  const long rounded = std::lround(raw);
  if (rounded != 0) return static_cast<int>(rounded);
  return raw < 0 ? -1 : 1;
}

void fit_axis(std::vector<int>& extents, int& origin, int limit) {
  compact(extents);
  int total = std::accumulate(extents.begin(), extents.end(), 0);
  while (total + kBorderCore > limit) {
    auto largest = std::max_element(extents.begin(), extents.end());
    if (*largest <= 1) {
      // Every extent is a single pixel; drop the last one (keep one).
      auto last = std::find(extents.begin(), extents.end(), 0);
      if (last == extents.begin() + 1) break;
      *(last - 1) = 0;
      total -= 1;
      continue;
    }
    const int cut = std::min(*largest - 1, total + kBorderCore - limit);
    *largest -= cut;
    total -= cut;
  }
  origin = std::clamp(origin, 0, std::max(0, limit - total - kBorderCore));
}

enum class StructuralOp { add, merge, remove };

void apply_structural(std::vector<int>& extents, StructuralOp op, std::mt19937_64& rng) {
  switch (op) {
    case StructuralOp::add:
      add_extent(extents);
      break;
    case StructuralOp::merge: {
      const int n = present_count(extents);
      if (n >= 2) merge_extents(extents, std::uniform_int_distribution<int>(0, n - 2)(rng));
      break;
    }
    case StructuralOp::remove:
      remove_extent(extents);
      break;
  }
}

}  // namespace

void validate_params(const GAParams& p) {
  if (p.population_size < 2) throw InvalidArgument("population_size must be at least 2");
  if (!is_probability(p.reproduce_frac)) throw InvalidArgument("reproduce_frac must lie in [0,1]");
  if (!is_probability(p.numeric_mutation_prob) || !is_probability(p.structural_mutation_prob) ||
      !is_probability(p.structural_ops.add) || !is_probability(p.structural_ops.merge) ||
      !is_probability(p.structural_ops.remove)) {
    throw InvalidArgument("mutation probabilities must lie in [0,1]");
  }
  if (p.numeric_mutation_sigma < 0) throw InvalidArgument("numeric_mutation_sigma must be non-negative");
  if (p.convergence_epsilon < 0) throw InvalidArgument("convergence_epsilon must be non-negative");
  if (p.convergence_window < 1) throw InvalidArgument("convergence_window must be at least 1");
  if (p.max_epochs < 0) throw InvalidArgument("max_epochs must be non-negative");
}

namespace {

double overlap_gray(const RasterImage& t, const RasterImage& c) {
  if (t.width() != c.width() || t.height() != c.height()) {
    throw InvalidArgument("target and candidate differ in size");
  }
  const auto sums = simd::active_kernels().overlap_sums(t.pixels().data(), c.pixels().data(), t.size());
  if (sums.dark_target == 0) throw DegenerateInput("target image is all white");
  if (sums.dark_candidate == 0) throw DegenerateInput("candidate renders all white");
  // Sums are in 0..255 units; one factor of 255 survives the rescale to [0,1].
  return static_cast<double>(sums.abs_diff) * 255.0 /
         (static_cast<double>(sums.dark_candidate) * static_cast<double>(sums.dark_target));
}

}  // namespace

double overlap_objective(const RasterImage& target, const RasterImage& candidate) {
  if (target.channels() == 1 && candidate.channels() == 1) return overlap_gray(target, candidate);
  return overlap_gray(to_luminance(target), to_luminance(candidate));
}

FitnessScore fitness(const TableGenotype& candidate, const RasterImage& target,
                     const BorderStyle& style) {
  // Page-sized scratch reused per thread; a fresh buffer per candidate
  // spends most of the GA's time in the allocator.
  thread_local RasterImage scratch;
  render_skeleton_into(scratch, candidate, style, {target.width(), target.height()});
  if (target.channels() == 1) return {overlap_gray(target, scratch)};
  return {overlap_gray(to_luminance(target), scratch)};
}

void add_extent(std::vector<int>& extents) {
  compact(extents);
  const int n = present_count(extents);
  if (n == 0 || n >= static_cast<int>(extents.size())) return;
  const auto largest = std::max_element(extents.begin(), extents.begin() + n);
  if (*largest < 2) return;
  const int first = *largest / 2;
  const int second = *largest - first;
  *largest = first;
  extents.insert(largest + 1, second);
  extents.pop_back();
}

void merge_extents(std::vector<int>& extents, int k) {
  compact(extents);
  const int n = present_count(extents);
  if (k < 0 || k + 1 >= n) return;
  extents[static_cast<std::size_t>(k)] += extents[static_cast<std::size_t>(k) + 1];
  extents.erase(extents.begin() + k + 1);
  extents.push_back(0);
}

void remove_extent(std::vector<int>& extents) {
  compact(extents);
  const int n = present_count(extents);
  if (n < 2) return;
  const auto smallest = std::min_element(extents.begin(), extents.begin() + n);
  extents.erase(smallest);
  extents.push_back(0);
}

TableGenotype clamp_to_canvas(TableGenotype g, Canvas canvas) {
  fit_axis(g.col_widths, g.origin_x, canvas.width);
  fit_axis(g.row_heights, g.origin_y, canvas.height);
  return g;
}

TableGenotype mutate(const TableGenotype& g, const GAParams& p, Canvas canvas, std::mt19937_64& rng,
                     MutationStats* stats) {
  TableGenotype out = g;
  std::bernoulli_distribution numeric(p.numeric_mutation_prob);
  std::normal_distribution<double> step(0.0, std::max(p.numeric_mutation_sigma, 1e-9));
  auto perturb = [&](int& value, int floor) {
    if (stats) ++stats->numeric_eligible;
    if (!numeric(rng)) return;
    if (stats) ++stats->numeric_perturbed;
    value = std::max(floor, value + gaussian_step(step, rng));
  };
  perturb(out.origin_x, 0);
  perturb(out.origin_y, 0);
  for (int& h : out.row_heights) {
    if (h > 0) perturb(h, 1);
  }
  for (int& w : out.col_widths) {
    if (w > 0) perturb(w, 1);
  }

  std::bernoulli_distribution structural(p.structural_mutation_prob);
  std::discrete_distribution<int> which(
      {p.structural_ops.add, p.structural_ops.merge, p.structural_ops.remove});
  const bool any_op = p.structural_ops.add + p.structural_ops.merge + p.structural_ops.remove > 0;
  for (auto* extents : {&out.row_heights, &out.col_widths}) {
    if (structural(rng) && any_op) {
      if (stats) ++stats->structural_fired;
      apply_structural(*extents, static_cast<StructuralOp>(which(rng)), rng);
    }
  }
  return clamp_to_canvas(std::move(out), canvas);
}

TableGenotype mutate(const TableGenotype& g, const GAParams& p, Canvas canvas, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return mutate(g, p, canvas, rng);
}

TableGenotype crossover(const TableGenotype& p1, const TableGenotype& p2, Canvas canvas) {
  if (p1.max_rows != p2.max_rows || p1.max_cols != p2.max_cols) {
    throw InvalidArgument("crossover parents differ in declared cardinality");
  }
  TableGenotype child = p1;
  child.origin_y = p2.origin_y;
  child.row_heights = p2.row_heights;
  return clamp_to_canvas(std::move(child), canvas);
}

bool has_converged(std::span<const double> history, double epsilon, int window) {
  if (window < 1 || history.size() < static_cast<std::size_t>(window) + 1) return false;
  for (std::size_t i = history.size() - static_cast<std::size_t>(window); i < history.size(); ++i) {
    const double improvement = history[i - 1] - history[i];
    if (improvement > epsilon * history[i - 1]) return false;
  }
  return true;
}

EvolveResult evolve(const TableGenotype& initial, const RasterImage& target, const GAParams& p) {
  validate_params(p);
  const RasterImage gray = to_luminance(target);
  if (std::all_of(gray.pixels().begin(), gray.pixels().end(), [](std::uint8_t v) { return v == kWhite; })) {
    throw DegenerateInput("target image is all white");
  }
  const Canvas canvas{gray.width(), gray.height()};
  if (auto v = validate_genotype(initial, canvas); !v) {
    throw InvalidArgument("initial genotype invalid for target: " + v.reason);
  }

  struct Individual {
    TableGenotype genotype;
    double fitness = 0.0;
    // Unchanged copies inherit the parent's score instead of re-rendering.
    bool scored = false;
  };
  const auto n = static_cast<std::size_t>(p.population_size);
  std::mt19937_64 rng(p.seed);

  auto evaluate = [&](std::vector<Individual>& pop) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (!pop[i].scored) todo.push_back(i);
    }
    parallel_for(todo.size(), [&](std::size_t k) {
      pop[todo[k]].fitness = fitness(pop[todo[k]].genotype, gray, p.style).value;
      pop[todo[k]].scored = true;
    });
  };
  auto inherit = [](TableGenotype child, const Individual& a, const Individual& b) {
    if (child == a.genotype) return Individual{std::move(child), a.fitness, true};
    if (child == b.genotype) return Individual{std::move(child), b.fitness, true};
    return Individual{std::move(child), 0.0, false};
  };
  auto best_index = [](const std::vector<Individual>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
      if (pop[i].fitness < pop[best].fitness) best = i;
    }
    return best;
  };

  std::vector<Individual> pop;
  pop.reserve(n);
  pop.push_back({initial, 0.0, false});
  while (pop.size() < n) pop.push_back({mutate(initial, p, canvas, rng), 0.0, false});
  evaluate(pop);

  EvolveResult result;
  std::size_t best = best_index(pop);
  result.history.push_back(pop[best].fitness);

  // Rank weights: best individual gets n, worst gets 1.
  std::vector<double> rank_weights(n);
  for (std::size_t r = 0; r < n; ++r) rank_weights[r] = static_cast<double>(n - r);
  std::discrete_distribution<std::size_t> pick_rank(rank_weights.begin(), rank_weights.end());

  for (int epoch = 1; epoch <= p.max_epochs; ++epoch) {
    if (has_converged(result.history, p.convergence_epsilon, p.convergence_window)) {
      result.converged = true;
      break;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pop[a].fitness < pop[b].fitness; });
    auto select = [&]() -> const Individual& { return pop[order[pick_rank(rng)]]; };

    std::vector<Individual> next;
    next.reserve(n);
    std::size_t elite = 0;
    if (p.elitism) {
      next.push_back(pop[best]);
      elite = 1;
    }
    const std::size_t slots = n - elite;
    const auto reproduced = static_cast<std::size_t>(std::lround(p.reproduce_frac * static_cast<double>(slots)));
    for (std::size_t k = 0; k < reproduced; ++k) {
      const Individual& parent = select();
      next.push_back(inherit(mutate(parent.genotype, p, canvas, rng), parent, parent));
    }
    while (next.size() < n) {
      const Individual& a = select();
      const Individual& b = select();
      next.push_back(inherit(crossover(a.genotype, b.genotype, canvas), a, b));
    }
    evaluate(next);
    pop = std::move(next);
    best = best_index(pop);
    result.history.push_back(pop[best].fitness);
  }
  if (!result.converged) {
    result.converged = has_converged(result.history, p.convergence_epsilon, p.convergence_window);
  }
  result.best = pop[best].genotype;
  result.best_fitness = pop[best].fitness;
  return result;
}

void write_history_csv(std::span<const double> history, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "epoch,best_fitness\n";
  char buf[64];
  for (std::size_t i = 0; i < history.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.10g\n", i, history[i]);
    out << buf;
  }
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace tablegrid
