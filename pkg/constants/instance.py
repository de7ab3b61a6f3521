format_version: int = 1
# Bound on v_size and w_size; index arrays are sized by them
max_basis_size: int = 100_000_000

# Rendered after a W name for the barred (inverse) direction
bar_suffix: str = "~"

# Names used for indices when the instance carries no labels
v_prefix: str = "v"
w_prefix: str = "w"
# Labels of columns appended by symmetrize when the table is labelled
symmetrized_w_prefix: str = "sym"

rational_field_name: str = "rational"
