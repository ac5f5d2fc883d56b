// Generated from data/emotion_lexicon.tsv; a unit test checks the two
// copies stay byte-identical. Regenerate by pasting the file body below.

namespace epitopic::detail {

extern const char kBuiltinLexicon[];
const char kBuiltinLexicon[] = R"TSV(# Compact word-emotion association lexicon over the eight basic emotions
# (anger, anticipation, disgust, fear, joy, sadness, surprise, trust).
# Format: word<TAB>emotion, one association per line; '#' starts a comment.
# A word may carry several associations (one line each). All words are in
# normalized form: lowercase ASCII, apostrophes removed.
afraid	fear
alarm	fear
alarmed	fear
alarming	fear
anxiety	fear
anxious	fear
apprehensive	fear
awe	fear
awe	surprise
creepy	disgust
creepy	fear
danger	fear
dangerous	fear
deadly	fear
dire	fear
dread	fear
fear	fear
fearful	fear
fears	fear
frightened	fear
frightening	fear
grim	fear
horrified	fear
horror	fear
insecure	fear
nervous	fear
panic	fear
panicked	fear
panicking	fear
paranoid	fear
peril	fear
petrified	fear
phobia	fear
scared	fear
scary	fear
terrified	fear
terrifying	fear
terror	fear
threat	fear
threatened	fear
threatening	fear
uneasy	fear
unsafe	fear
worried	fear
worries	fear
worry	fear
worrying	fear
amazing	joy
awesome	joy
beautiful	joy
bliss	joy
brilliant	joy
celebrate	joy
celebration	joy
cheer	joy
cheerful	joy
delight	joy
delighted	joy
enjoy	joy
enjoyed	joy
excited	joy
fantastic	joy
fun	joy
funny	joy
glad	joy
good	joy
great	joy
happiness	joy
happy	joy
joy	joy
joyful	joy
laugh	joy
laughing	joy
laughter	joy
love	joy
loved	joy
lovely	joy
optimistic	joy
optimistic	anticipation
pleased	joy
pleasure	joy
proud	joy
proud	trust
smile	joy
smiling	joy
thrilled	joy
wonderful	joy
assurance	trust
assure	trust
assured	trust
believe	trust
belief	trust
confidence	trust
confident	trust
credible	trust
dependable	trust
faith	trust
faithful	trust
guardian	trust
honest	trust
honesty	trust
integrity	trust
loyal	trust
loyalty	trust
protect	trust
protected	trust
protection	trust
reliable	trust
rely	trust
safe	trust
safety	trust
secure	trust
security	trust
sincere	trust
support	trust
supportive	trust
trust	trust
trusted	trust
trustworthy	trust
truthful	trust
abhorrent	disgust
disgust	disgust
disgusted	disgust
disgusting	disgust
distaste	disgust
filth	disgust
filthy	disgust
foul	disgust
gross	disgust
horrid	disgust
loathe	disgust
loathing	disgust
nasty	disgust
repugnant	disgust
repulsive	disgust
revolting	disgust
rotten	disgust
sickening	disgust
vile	disgust
yuck	disgust
aggressive	anger
anger	anger
angry	anger
annoyed	anger
annoying	anger
bitter	anger
enraged	anger
frustrated	anger
frustrating	anger
frustration	anger
furious	anger
fury	anger
hate	anger
hated	anger
hateful	anger
hatred	anger
hostile	anger
hostility	anger
infuriated	anger
insult	anger
insulted	anger
irritated	anger
irritating	anger
livid	anger
mad	anger
offensive	anger
outrage	anger
outraged	anger
outrageous	anger
rage	anger
raging	anger
resent	anger
resentment	anger
cry	sadness
crying	sadness
depressed	sadness
depressing	sadness
depression	sadness
despair	sadness
devastated	sadness
devastating	sadness
gloom	sadness
gloomy	sadness
grief	sadness
grieving	sadness
heartbreaking	sadness
heartbroken	sadness
hopeless	sadness
hurt	sadness
lonely	sadness
loneliness	sadness
loss	sadness
miserable	sadness
misery	sadness
mourn	sadness
mourning	sadness
regret	sadness
sad	sadness
sadness	sadness
sorrow	sadness
sorrowful	sadness
tearful	sadness
tears	sadness
tragedy	sadness
tragic	sadness
unhappy	sadness
amazed	surprise
astonished	surprise
astonishing	surprise
astounded	surprise
baffled	surprise
bewildered	surprise
incredible	surprise
shock	surprise
shocked	surprise
shocking	surprise
speechless	surprise
startled	surprise
startling	surprise
stunned	surprise
stunning	surprise
sudden	surprise
suddenly	surprise
surprise	surprise
surprised	surprise
surprising	surprise
unbelievable	surprise
unexpected	surprise
whoa	surprise
wow	surprise
anticipate	anticipation
anticipated	anticipation
anticipation	anticipation
await	anticipation
awaiting	anticipation
curious	anticipation
curiosity	anticipation
eager	anticipation
eagerly	anticipation
expect	anticipation
expectation	anticipation
expected	anticipation
expecting	anticipation
forecast	anticipation
foresee	anticipation
hope	anticipation
hopeful	anticipation
hoping	anticipation
plan	anticipation
planned	anticipation
planning	anticipation
predict	anticipation
predicted	anticipation
prediction	anticipation
prepare	anticipation
prepared	anticipation
preparing	anticipation
preparation	anticipation
ready	anticipation
upcoming	anticipation
vigilant	anticipation
watchful	anticipation
)TSV";

}  // namespace epitopic::detail
