#include "mfscast/optim.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>

#include "mfscast/errors.hpp"

namespace mfs {

namespace {

struct Trampoline {
    const std::function<double(std::span<const double>)>* f;
};

double evaluate(const gsl_vector* v, void* params) {
    auto* t = static_cast<Trampoline*>(params);
    std::span<const double> x{v->data, v->size};
    double val = (*t->f)(x);
    // keep the simplex away from invalid regions without aborting
    return std::isfinite(val) ? val : 1e300;
}

}  // namespace

SimplexResult minimize_simplex(const std::function<double(std::span<const double>)>& objective,
                               std::span<const double> x0, std::span<const double> steps,
                               int max_iterations, double size_tolerance) {
    if (x0.empty() || x0.size() != steps.size())
        throw ParameterError("minimize_simplex: dimension mismatch");
    gsl_set_error_handler_off();

    const std::size_t n = x0.size();
    Trampoline tramp{&objective};
    gsl_multimin_function func;
    func.f = &evaluate;
    func.n = n;
    func.params = &tramp;

    gsl_vector* x = gsl_vector_alloc(n);
    gsl_vector* step = gsl_vector_alloc(n);
    for (std::size_t i = 0; i < n; ++i) {
        gsl_vector_set(x, i, x0[i]);
        gsl_vector_set(step, i, steps[i]);
    }
    gsl_multimin_fminimizer* s =
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
    gsl_multimin_fminimizer_set(s, &func, x, step);

    SimplexResult result;
    int it = 0;
    while (it < max_iterations) {
        ++it;
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), size_tolerance) ==
            GSL_SUCCESS) {
            result.converged = true;
            break;
        }
    }
    result.iterations = it;
    result.fmin = s->fval;
    result.x.assign(s->x->data, s->x->data + n);

    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(step);
    gsl_vector_free(x);
    return result;
}

}  // namespace mfs
