package dualpanic

type Keeper struct{}

func (k Keeper) EndBlock() { validate(7) }

func validate(n int64) {
	if n < 0 {
		panic("negative")
	}
	if n > 100 {
		panic("too large")
	}
}
