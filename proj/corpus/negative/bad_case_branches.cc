Inductive nat : Type0 := O : nat | S : nat -> nat.

Definition bad := fun (n : nat) =>
  match n as y in nat return nat with
  | O => O
  end.
