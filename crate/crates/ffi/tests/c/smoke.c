#include <math.h>
#include <stdio.h>
#include <string.h>

#include "rhs.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,   \
                    #cond, rhs_last_error_message());                 \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    RhsLadder *ladder = NULL;
    CHECK(rhs_ladder_new("even", &ladder) == RHS_STATUS_OK);
    size_t dim = 0;
    CHECK(rhs_ladder_dim(ladder, 3, &dim) == RHS_STATUS_OK && dim == 6);

    RhsComplex xs[2] = {{1.0, 0.0}, {0.0, 2.0}};
    RhsPhi *x = NULL;
    CHECK(rhs_phi_new(ladder, 1, xs, 2, &x) == RHS_STATUS_OK);
    RhsPhi *lifted = NULL;
    CHECK(rhs_phi_include(x, 4, &lifted) == RHS_STATUS_OK);
    CHECK(rhs_phi_len(lifted) == 8 && rhs_phi_canonical_level(lifted) == 1);
    RhsComplex ip;
    CHECK(rhs_phi_inner_product(lifted, x, &ip) == RHS_STATUS_OK);
    CHECK(ip.re == 5.0 && ip.im == 0.0);

    RhsPhi *bad = NULL;
    CHECK(rhs_phi_include(lifted, 2, &bad) == RHS_STATUS_LEVEL_ORDER);
    CHECK(strlen(rhs_last_error_message()) > 0);

    RhsHilbert *h = NULL;
    CHECK(rhs_hilbert_geometric(0.5, &h) == RHS_STATUS_OK);
    double tail = 0.0;
    CHECK(rhs_hilbert_tail_norm(h, 2, &tail) == RHS_STATUS_OK);
    CHECK(fabs(tail - sqrt(1.0 / 12.0)) < 1e-15);
    CHECK(rhs_hilbert_geometric(1.5, &h) == RHS_STATUS_INVALID_ARGUMENT);

    RhsFunctional *f = NULL;
    CHECK(rhs_functional_factorial(&f) == RHS_STATUS_OK);
    RhsComplex v;
    CHECK(rhs_functional_pair(f, lifted, &v) == RHS_STATUS_OK);
    CHECK(v.re == 1.0 && v.im == 4.0);

    RhsComplex c;
    CHECK(rhs_fourier_coeff("cosine", 1, 64, &c) == RHS_STATUS_OK);
    CHECK(fabs(c.re - 0.5) < 1e-14);

    rhs_functional_free(f);
    rhs_hilbert_free(h);
    rhs_phi_free(lifted);
    rhs_phi_free(x);
    rhs_ladder_free(ladder);
    puts("ok");
    return 0;
}
