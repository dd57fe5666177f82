#include <stdio.h>
#include <string.h>
#include "pathlike.h"

int main(void) {
    PlTree *t = NULL;
    if (pl_tree_parse("6\n1 2\n2 3\n3 4\n2 5\n3 6\n", &t) != PL_STATUS_OK) return 10;
    PlVerdict v;
    PlWitness *w = NULL;
    if (pl_decide(t, 0, 0, &v, &w) != PL_STATUS_OK || v != PL_VERDICT_YES || w == NULL) return 11;
    char *text = NULL;
    if (pl_witness_to_text(w, &text) != PL_STATUS_OK) return 12;
    printf("%s", text);
    pl_string_free(text);
    int valid = 0;
    if (pl_witness_check(w, t, &valid) != PL_STATUS_OK || valid != 1) return 13;
    pl_witness_free(w);
    pl_tree_free(t);
    if (pl_tree_parse("3\n1 2\n", &t) != PL_STATUS_PARSE) return 14;
    if (strlen(pl_last_error()) == 0) return 15;
    size_t n = 0;
    if (pl_count_path_like(6, &n) != PL_STATUS_OK) return 16;
    printf("count6 %zu\n", n);
    return 0;
}
