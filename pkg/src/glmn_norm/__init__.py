"""glmn-norm: exact norms of gl(m|n) Bethe vectors."""
