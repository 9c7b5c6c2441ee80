Inductive nat : Type0 := O : nat | S : nat -> nat.

Definition u := S x.
