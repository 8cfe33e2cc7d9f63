#!/usr/bin/env python3
"""Regenerates resources/verbs.txt.

Base verbs are inflected with regular English rules plus an irregular table.
Verbs whose base form is usually a noun ("film", "star", "stage") contribute
only their past and -ing forms, so that noun readings in questions are not
mistaken for relations.
"""
import pathlib
import sys

BASE = """
accept achieve acquire act adapt add admire admit adopt advise affect agree aim
allow announce answer appear apply appoint approach approve argue arrange arrest
arrive ask assign assist attach attack attempt attend attract award
bake ban base bear beat become begin behave believe belong bend bet bind bite
blame bleed blow boil book borrow bother bounce break breed bring broadcast build
burn burst bury buy
calculate call campaign cancel capture care carry cast catch cause celebrate
challenge change charge chase cheat check choose claim clean clear climb close
coach collect combine come command comment commit compare compete complain
complete compose concern conclude conduct confirm connect conquer consider
consist construct contain continue contribute control convert convince cook
cooperate copy correct cost cough count cover crash create creep criticize
cross crush cry cure cut
damage dance deal debate decide declare decorate decrease dedicate defeat defend
define delay deliver demand deny depend describe deserve design destroy detect
develop die dig direct disagree disappear discover discuss dislike dismiss
display dissolve distribute dive divide divorce do donate double draw dream
dress drink drive drop dry earn eat edit educate elect eliminate emerge employ
enable encourage end endorse engage enjoy enter entertain escape establish
estimate evaluate examine exist expand expect explain explode explore export
express extend
face fail fall feed feel fight fill film finance find finish fire fit fix flee
fling float flow fly fold follow forbid force forecast forget forgive form found
freeze frighten fund
gain gather generate get give glow go govern grab graduate grant greet grind
grow guarantee guard guess guide
hand handle hang happen harm hate head hear help hide hire hit hold hope host
hunt hurry hurt
identify ignore illustrate imagine imply import impress improve include
increase indicate influence inform inherit injure insist inspire install
instruct intend interrupt introduce invade invent invest investigate invite
involve issue
join joke judge jump justify keep kick kill kiss kneel knit knock know
label land last laugh launch lay lead lean leap learn leave lend let lie lift
light like limit link list listen live load locate lock look lose love
maintain make manage manufacture march marry match matter mean measure meet
melt mention merge mentor migrate miss mix move murder
name narrate need negotiate nominate note notice
obey object observe obtain occupy occur offer open operate oppose order
organize originate overcome owe own
paint participate pass pay perform permit persuade pick place plan plant play
please plot point portray possess post pour practice praise pray predict
prefer prepare present preserve press pretend prevent print proceed produce
promise promote pronounce propose protect protest prove provide publish pull
punch punish purchase pursue push put
qualify question quit
race rain raise rank reach react read realize receive recognize recommend
record recover recruit reduce refer reflect refuse regard register regret
reign reject relate release rely remain remember remind remove rent repair
repeat replace reply report represent request require rescue research resemble
reside resign resist respond rest restore result retire return reveal review
reward ride ring rise risk roll rule run
save say score scream search seat see seek seem select sell send separate
serve set settle shake shape share shine shoot shout show shrink shut sign
sing sink sit ski sleep slide smell smile solve speak spell spend split spoil
sponsor spread stage stand star start state stay steal stick sting stop store
strike structure study submit succeed suffer suggest supply support suppose
surprise surround survive suspect swear sweep swim swing
take talk tax teach tear tell tend terminate test thank think threaten throw
tie tour trade train transfer translate travel treat trust try turn type
understand undertake unite use
value vanish visit vote wait wake walk want warn wash watch wear weave weep
welcome win wish withdraw wonder work worry wound write
""".split()

# Usually read as nouns in questions: emit inflected forms only.
NOUNISH = set("""
book cast coach control cost count cover cut dance deal debut design display
double dream dress drink end experience face fall feature film fire form fund
hand head host issue label land last lead light list mean name note object
order paint place plan plant plot point post practice present question race
rain rank record rent report request rest result review reward ring rule score
seat set shape share show sign smell sponsor stage star state store structure
study supply support tax test tour trade train type value vote wish work wound
""".split())

IRREGULAR = {
    "bear": ("bore", "born"), "beat": ("beat", "beaten"), "become": ("became", "become"),
    "begin": ("began", "begun"), "bend": ("bent", "bent"), "bet": ("bet", "bet"),
    "bind": ("bound", "bound"), "bite": ("bit", "bitten"), "bleed": ("bled", "bled"),
    "blow": ("blew", "blown"), "break": ("broke", "broken"), "breed": ("bred", "bred"),
    "bring": ("brought", "brought"), "broadcast": ("broadcast", "broadcast"),
    "build": ("built", "built"), "burst": ("burst", "burst"), "buy": ("bought", "bought"),
    "cast": ("cast", "cast"), "catch": ("caught", "caught"), "choose": ("chose", "chosen"),
    "come": ("came", "come"), "cost": ("cost", "cost"), "creep": ("crept", "crept"),
    "cut": ("cut", "cut"), "deal": ("dealt", "dealt"), "dig": ("dug", "dug"),
    "dive": ("dove", "dived"), "do": ("did", "done"), "draw": ("drew", "drawn"),
    "dream": ("dreamt", "dreamt"), "drink": ("drank", "drunk"), "drive": ("drove", "driven"),
    "eat": ("ate", "eaten"), "fall": ("fell", "fallen"), "feed": ("fed", "fed"),
    "feel": ("felt", "felt"), "fight": ("fought", "fought"), "find": ("found", "found"),
    "flee": ("fled", "fled"), "fling": ("flung", "flung"), "fly": ("flew", "flown"),
    "forbid": ("forbade", "forbidden"), "forecast": ("forecast", "forecast"),
    "forget": ("forgot", "forgotten"), "forgive": ("forgave", "forgiven"),
    "freeze": ("froze", "frozen"), "get": ("got", "gotten"), "give": ("gave", "given"),
    "go": ("went", "gone"), "grind": ("ground", "ground"), "grow": ("grew", "grown"),
    "hang": ("hung", "hung"), "hear": ("heard", "heard"), "hide": ("hid", "hidden"),
    "hit": ("hit", "hit"), "hold": ("held", "held"), "hurt": ("hurt", "hurt"),
    "keep": ("kept", "kept"), "kneel": ("knelt", "knelt"), "knit": ("knit", "knit"),
    "know": ("knew", "known"), "lay": ("laid", "laid"), "lead": ("led", "led"),
    "leap": ("leapt", "leapt"), "leave": ("left", "left"), "lend": ("lent", "lent"),
    "let": ("let", "let"), "lie": ("lay", "lain"), "light": ("lit", "lit"),
    "lose": ("lost", "lost"), "make": ("made", "made"), "mean": ("meant", "meant"),
    "meet": ("met", "met"), "overcome": ("overcame", "overcome"), "pay": ("paid", "paid"),
    "put": ("put", "put"), "quit": ("quit", "quit"), "read": ("read", "read"),
    "ride": ("rode", "ridden"), "ring": ("rang", "rung"), "rise": ("rose", "risen"),
    "run": ("ran", "run"), "say": ("said", "said"), "see": ("saw", "seen"),
    "seek": ("sought", "sought"), "sell": ("sold", "sold"), "send": ("sent", "sent"),
    "set": ("set", "set"), "shake": ("shook", "shaken"), "shine": ("shone", "shone"),
    "shoot": ("shot", "shot"), "show": ("showed", "shown"), "shrink": ("shrank", "shrunk"),
    "shut": ("shut", "shut"), "sing": ("sang", "sung"), "sink": ("sank", "sunk"),
    "sit": ("sat", "sat"), "sleep": ("slept", "slept"), "slide": ("slid", "slid"),
    "speak": ("spoke", "spoken"), "spend": ("spent", "spent"), "split": ("split", "split"),
    "spread": ("spread", "spread"), "stand": ("stood", "stood"), "steal": ("stole", "stolen"),
    "stick": ("stuck", "stuck"), "sting": ("stung", "stung"), "strike": ("struck", "struck"),
    "swear": ("swore", "sworn"), "sweep": ("swept", "swept"), "swim": ("swam", "swum"),
    "swing": ("swung", "swung"), "take": ("took", "taken"), "teach": ("taught", "taught"),
    "tear": ("tore", "torn"), "tell": ("told", "told"), "think": ("thought", "thought"),
    "throw": ("threw", "thrown"), "understand": ("understood", "understood"),
    "undertake": ("undertook", "undertaken"), "wake": ("woke", "woken"),
    "wear": ("wore", "worn"), "weave": ("wove", "woven"), "weep": ("wept", "wept"),
    "win": ("won", "won"), "withdraw": ("withdrew", "withdrawn"), "write": ("wrote", "written"),
}

VOWELS = set("aeiou")
# Final consonant doubles for these (stressed last syllable, CVC ending).
DOUBLE = set("""
admit ban bet commit control dig drop forbid grab knit occur omit permit plan
plot prefer quit refer regret rob ship shop ski star step stop submit swim
""".split())


def third_person(v):
    if v.endswith(("s", "sh", "ch", "x", "z", "o")):
        return v + "es"
    if v.endswith("y") and v[-2] not in VOWELS:
        return v[:-1] + "ies"
    return v + "s"


def stem_for_suffix(v):
    if v in DOUBLE and v[-1] not in "wxy":
        return v + v[-1]
    return v


def past(v):
    if v.endswith("e"):
        return v + "d"
    if v.endswith("y") and v[-2] not in VOWELS:
        return v[:-1] + "ied"
    return stem_for_suffix(v) + "ed"


def gerund(v):
    if v.endswith("ie"):
        return v[:-2] + "ying"
    if v.endswith("e") and not v.endswith(("ee", "ye", "oe")) and v != "be":
        return v[:-1] + "ing"
    return stem_for_suffix(v) + "ing"


def main(out):
    forms = set()
    for v in BASE:
        p, pp = IRREGULAR.get(v, (past(v), past(v)))
        forms.update({p, pp, gerund(v)})
        if v not in NOUNISH:
            forms.update({v, third_person(v)})
    pathlib.Path(out).write_text("\n".join(sorted(forms)) + "\n")
    print(f"{len(BASE)} base verbs, {len(forms)} forms -> {out}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "resources/verbs.txt")
