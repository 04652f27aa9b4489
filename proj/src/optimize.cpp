#include "aep/optimize.hpp"

#include <exception>
#include <limits>
#include <memory>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

namespace aep {

namespace {

struct VectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

struct Context {
    const std::function<double(std::span<const double>)>* objective;
    std::exception_ptr error;
};

// Exceptions must not unwind through the C library frames; they are parked
// here and rethrown once control is back in C++.
double trampoline(const gsl_vector* x, void* params) {
    auto* context = static_cast<Context*>(params);
    if (context->error) return std::numeric_limits<double>::quiet_NaN();
    try {
        return (*context->objective)(std::span<const double>(x->data, x->size));
    } catch (...) {
        context->error = std::current_exception();
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

SimplexResult minimize_simplex(const std::function<double(std::span<const double>)>& objective,
                               std::vector<double> start, const SimplexOptions& options) {
    SimplexResult result;
    if (start.empty()) {
        result.value = objective({});
        result.converged = true;
        return result;
    }
    static const gsl_error_handler_t* previous = gsl_set_error_handler_off();
    (void)previous;

    const std::size_t n = start.size();
    std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
    std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(n));
    for (std::size_t i = 0; i < n; ++i) {
        gsl_vector_set(x.get(), i, start[i]);
        gsl_vector_set(step.get(), i,
                       options.initial_step.empty() ? 0.1 : options.initial_step.at(i));
    }

    gsl_multimin_function fn;
    fn.n = n;
    fn.f = &trampoline;
    Context context{&objective, nullptr};
    fn.params = &context;

    std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> minimizer(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
    if (gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), step.get()) != GSL_SUCCESS) {
        if (context.error) std::rethrow_exception(context.error);
        throw std::runtime_error("failed to initialise the simplex minimizer");
    }

    int status = GSL_CONTINUE;
    int iteration = 0;
    while (status == GSL_CONTINUE && iteration < options.max_iterations) {
        ++iteration;
        if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
        status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(minimizer.get()),
                                        options.size_tol);
    }

    if (context.error) std::rethrow_exception(context.error);

    const gsl_vector* best = gsl_multimin_fminimizer_x(minimizer.get());
    result.x.assign(best->data, best->data + n);
    result.value = gsl_multimin_fminimizer_minimum(minimizer.get());
    result.iterations = iteration;
    result.converged = status == GSL_SUCCESS;
    return result;
}

}  // namespace aep
