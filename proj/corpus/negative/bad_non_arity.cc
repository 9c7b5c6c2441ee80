Inductive nat : Type0 := O : nat | S : nat -> nat.

Inductive r : nat := rr : r.
