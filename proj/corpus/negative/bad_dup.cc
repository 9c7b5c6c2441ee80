Inductive nat : Type0 := O : nat | S : nat -> nat.

Definition a := O.
Definition a := S O.
