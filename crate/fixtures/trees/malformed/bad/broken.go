package bad

func Broken( {
	if true {
}
