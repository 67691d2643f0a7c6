#include <stdio.h>
#include <string.h>
#include "bicomplex.h"

static int fail(const char *what) {
    const char *msg = bcx_last_error_message();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "(no message)");
    return 1;
}

int main(void) {
    const char *json =
        "{\"rows\":2,\"cols\":2,\"entries\":["
        "[{\"idem\":[\"2\",\"1\"]},{\"idem\":[\"0\",\"0\"]}],"
        "[{\"idem\":[\"0\",\"0\"]},{\"idem\":[\"3\",\"5\"]}]]}";
    BcxMatrix *a = NULL, *inv = NULL, *prod = NULL;
    char *text = NULL;

    if (bcx_matrix_from_json(json, &a) != BCX_STATUS_OK) return fail("from_json");
    if (bcx_matrix_rows(a) != 2 || bcx_matrix_cols(a) != 2) return fail("shape");
    if (bcx_matrix_inverse(a, &inv) != BCX_STATUS_OK) return fail("inverse");
    if (bcx_matrix_mul(a, inv, &prod) != BCX_STATUS_OK) return fail("mul");
    if (bcx_matrix_determinant_json(prod, &text) != BCX_STATUS_OK) return fail("det");
    if (strstr(text, "\"1\"") == NULL) return fail("det value");
    printf("%s\n", text);
    bcx_string_free(text);

    if (bcx_matrix_from_json("not json", &prod) != BCX_STATUS_PARSE) return fail("expected parse error");

    BcxScalar z = bcx_scalar_from_euclidean(3.0, 4.0, 1.0, -2.0);
    BcxScalar w;
    if (bcx_scalar_inverse(z, &w) != BCX_STATUS_OK) return fail("scalar inverse");
    BcxScalar one = bcx_scalar_mul(z, w);
    if (one.c1_re < 1.0 - 1e-12 || one.c1_re > 1.0 + 1e-12) return fail("scalar product");

    bcx_matrix_free(a);
    bcx_matrix_free(inv);
    bcx_matrix_free(prod);
    return 0;
}
