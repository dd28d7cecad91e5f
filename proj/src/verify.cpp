// placeholder until the verification suite lands
