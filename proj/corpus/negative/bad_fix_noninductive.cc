Fixpoint g / 1 : forall (p : Prop), Prop :=
  fun (p : Prop) => p.
