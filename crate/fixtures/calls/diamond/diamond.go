package diamond

type Keeper struct{}

func (k Keeper) BeginBlock() {
	k.rewards()
	k.slashing()
	shared()
}

func (k Keeper) rewards() { shared() }

func (k Keeper) slashing() { shared() }

func shared() {
	panic("invariant broken")
}
