#include <stdio.h>
#include <string.h>

#include "bqtop.h"

static const char *RP2 =
    "arrow al1 3 2\narrow be1 3 2\narrow al2 2 1\narrow be2 2 1\n"
    "rel al1*al2 - be1*be2\nrel al1*be2 - be1*al2\n";

int main(void) {
    BqQuiver *q = NULL;
    if (bq_quiver_parse(RP2, "rp2", &q) != BQ_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", bq_last_error());
        return 1;
    }
    size_t counts[4], len = 0;
    if (bq_cell_counts(q, false, counts, 4, &len) != BQ_STATUS_OK || len != 3 || counts[2] != 4) {
        return 2;
    }
    char *json = NULL;
    if (bq_homology_json(q, "Z", false, false, &json) != BQ_STATUS_OK || strstr(json, "\"H1\"") == NULL) {
        return 3;
    }
    printf("%s\n", json);
    bq_string_free(json);
    BqQuiver *bad = NULL;
    if (bq_quiver_parse("arrow a 1\n", NULL, &bad) != BQ_STATUS_INVALID_INPUT || bad != NULL || strlen(bq_last_error()) == 0) {
        return 4;
    }
    bq_quiver_free(q);
    return 0;
}
