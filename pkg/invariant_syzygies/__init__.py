"""Init for invariant syzygies."""
